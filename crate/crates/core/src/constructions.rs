//! Closed-form optimal set constructions on Sierpinski triangle graphs.
//!
//! Each builder realizes the extremal set behind the corresponding closed
//! form and validates itself with [`validate_set`] before returning, so an
//! invalid certificate can never escape:
//!
//! | variant          | size for `n = 1` | size for `n >= 2` |
//! |------------------|------------------|-------------------|
//! | mutual           | 4                | `3^(n-1) + 3`     |
//! | general position | 3                | `3^(n-1) + 3`     |
//! | outer            | 3                | `3^(n-2) + 3`     |
//! | total            | 3                | 3                 |
//! | dual             | 3                | 4                 |

use crate::error::{Error, Result};
use crate::graph::{all_pairs_distances, DistanceMatrix};
use crate::sierpinski::{build_sierpinski_triangle, SierpinskiTriangle};
use crate::visibility::{validate_set, Variant, VertexSet};

/// A constructed optimal set together with the size its closed form predicts.
#[derive(Debug, Clone)]
pub struct ConstructedSet {
    pub variant: Variant,
    pub n: usize,
    pub vertices: VertexSet,
    pub expected_size: usize,
}

/// The closed-form optimum for a variant on `ST_3^n`, `n >= 1`.
pub fn closed_form(variant: Variant, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "closed forms are stated for n >= 1; ST_3^0 is a triangle".into(),
        ));
    }
    Ok(match variant {
        Variant::Mutual => 3usize.pow(n as u32 - 1) + 3,
        Variant::GeneralPosition => {
            if n == 1 {
                3
            } else {
                3usize.pow(n as u32 - 1) + 3
            }
        }
        Variant::Outer => {
            if n == 1 {
                3
            } else {
                3usize.pow(n as u32 - 2) + 3
            }
        }
        Variant::Total => 3,
        Variant::Dual => {
            if n == 1 {
                3
            } else {
                4
            }
        }
    })
}

/// Builds the optimal set for `variant` on a prebuilt `ST_3^n`.
pub fn construct_for(
    st: &SierpinskiTriangle,
    dist: &DistanceMatrix,
    variant: Variant,
) -> Result<ConstructedSet> {
    let n = st.depth();
    let expected = closed_form(variant, n)?;
    let verts = match variant {
        Variant::Mutual => mutual_vertices(st, dist)?,
        Variant::GeneralPosition => {
            if n == 1 {
                st.extreme_vertices().to_vec()
            } else {
                mutual_vertices(st, dist)?
            }
        }
        Variant::Outer => outer_vertices(st)?,
        Variant::Total => st.extreme_vertices().to_vec(),
        Variant::Dual => dual_vertices(st, dist)?,
    };
    let vertices = VertexSet::new(st.vertex_count(), verts)?;
    if vertices.len() != expected {
        return Err(Error::InvariantViolation(format!(
            "{variant} construction for n={n} has {} vertices, closed form says {expected}",
            vertices.len()
        )));
    }
    if let Some(violation) = validate_set(st.graph(), dist, &vertices, variant) {
        return Err(Error::InvariantViolation(format!(
            "{variant} construction for n={n} failed validation: {violation}"
        )));
    }
    Ok(ConstructedSet { variant, n, vertices, expected_size: expected })
}

fn mutual_vertices(st: &SierpinskiTriangle, dist: &DistanceMatrix) -> Result<Vec<usize>> {
    let ex = st.extreme_vertices();
    if st.depth() == 1 {
        // two extremes plus the two midpoints other than their common
        // neighbor; brute force over ST_3^1 confirms this shape is optimal
        let (a, b) = (ex[0], ex[1]);
        let mid = (0..st.vertex_count())
            .find(|&w| w != a && w != b && dist.strictly_between(a, b, w))
            .ok_or_else(|| Error::InvariantViolation("extremes of ST_3^1 lost their midpoint".into()))?;
        let mut verts = vec![a, b];
        verts.extend((0..st.vertex_count()).filter(|&v| !ex.contains(&v) && v != mid));
        return Ok(verts);
    }
    let mut verts: Vec<usize> = ex.to_vec();
    for addr in st.enumerate_h2_copies()? {
        verts.extend(st.proper_vertices(&addr)?);
    }
    verts.sort_unstable();
    verts.dedup();
    Ok(verts)
}

fn outer_vertices(st: &SierpinskiTriangle) -> Result<Vec<usize>> {
    let ex = st.extreme_vertices();
    if st.depth() == 1 {
        return Ok(ex.to_vec());
    }
    let mut verts: Vec<usize> = ex.to_vec();
    for addr in st.enumerate_h2_copies()? {
        // tie-break: the smallest proper vertex of each copy
        verts.push(st.proper_vertices(&addr)?[0]);
    }
    verts.sort_unstable();
    verts.dedup();
    Ok(verts)
}

fn dual_vertices(st: &SierpinskiTriangle, dist: &DistanceMatrix) -> Result<Vec<usize>> {
    let ex = st.extreme_vertices();
    if st.depth() == 1 {
        return Ok(ex.to_vec());
    }
    let (p0, p1, p2) = (ex[0], ex[1], ex[2]);
    // the neighbor of p0 on the p0,p1 side
    let mut on_side = st
        .graph()
        .neighbors(p0)
        .iter()
        .copied()
        .filter(|&x| dist.on_interval(p0, p1, x));
    let u = on_side
        .next()
        .ok_or_else(|| Error::InvariantViolation("no neighbor of p0 lies toward p1".into()))?;
    if on_side.next().is_some() {
        return Err(Error::InvariantViolation(
            "both neighbors of p0 lie on the p0,p1 side".into(),
        ));
    }
    // try p2's neighbors in ascending order and keep the first that validates
    for &v in st.graph().neighbors(p2) {
        let candidate = VertexSet::new(st.vertex_count(), vec![p0, u, p2, v])?;
        if validate_set(st.graph(), dist, &candidate, Variant::Dual).is_none() {
            return Ok(candidate.as_slice().to_vec());
        }
    }
    Err(Error::InvariantViolation(
        "no neighbor of p2 completes a dual visibility quadruple".into(),
    ))
}

/// Largest mutual-visibility set of `ST_3^n`.
pub fn construct_mv(n: usize) -> Result<ConstructedSet> {
    construct_named(n, Variant::Mutual)
}

/// Largest general position set of `ST_3^n`.
pub fn construct_gp(n: usize) -> Result<ConstructedSet> {
    construct_named(n, Variant::GeneralPosition)
}

/// Largest outer mutual-visibility set of `ST_3^n`.
pub fn construct_outer(n: usize) -> Result<ConstructedSet> {
    construct_named(n, Variant::Outer)
}

/// Largest total mutual-visibility set of `ST_3^n` (the three extremes).
pub fn construct_total(n: usize) -> Result<ConstructedSet> {
    construct_named(n, Variant::Total)
}

/// Largest dual mutual-visibility set of `ST_3^n`.
pub fn construct_dual(n: usize) -> Result<ConstructedSet> {
    construct_named(n, Variant::Dual)
}

fn construct_named(n: usize, variant: Variant) -> Result<ConstructedSet> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "constructions are defined for n >= 1; all of ST_3^0 = K_3 is optimal".into(),
        ));
    }
    let st = build_sierpinski_triangle(n)?;
    let dist = all_pairs_distances(st.graph())?;
    construct_for(&st, &dist, variant)
}
