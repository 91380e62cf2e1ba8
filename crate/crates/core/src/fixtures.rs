//! The worked example used throughout the tests and the README: a `map`
//! function over lists, before and after each structural operation.

/// Source with the cursor-36 scenario: first branch at `[36,46)`, second at
/// `[49,77)`. The first line ends in a single space before the newline.
pub const SNIPPET: &str =
    "let rec map f xs = match xs with \n  | [] -> []\n  | x :: xs -> f x :: map f xs";

/// `SNIPPET` after transposing the two branches.
pub const SNIPPET_TRANSPOSED: &str =
    "let rec map f xs = match xs with \n  | x :: xs -> f x :: map f xs\n  | [] -> []";

/// `SNIPPET` after deleting the first branch.
pub const SNIPPET_DELETED: &str =
    "let rec map f xs = match xs with \n  | x :: xs -> f x :: map f xs";
