//! Compiles the book's code snippets as doc-tests, keeping the guide in
//! `book/` honest: `cargo test --doc` fails when a chapter drifts from the
//! library.

macro_rules! chapter {
    ($name:ident, $path:literal) => {
        #[doc = include_str!($path)]
        pub mod $name {}
    };
}

chapter!(introduction, "../../../book/src/introduction.md");
chapter!(sierpinski_graphs, "../../../book/src/sierpinski-graphs.md");
chapter!(visibility, "../../../book/src/visibility.md");
chapter!(constructions, "../../../book/src/constructions.md");
chapter!(search, "../../../book/src/search.md");
chapter!(encodings, "../../../book/src/encodings.md");
chapter!(cli, "../../../book/src/cli.md");
