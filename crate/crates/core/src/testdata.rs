//! Worked-example fixtures shared by the unit tests.

/// Eight strings of length eight over ACGT.
pub(crate) const EXAMPLE_STRINGS: &str =
    "GATTACAT\nTAGAGATA\nCATCACAT\nTACATACA\nGATAGATA\nTAAAGAGC\nATTACCAT\nACATTACT\n";

/// Rows of the sorted-suffix permutation matrix for [`EXAMPLE_STRINGS`]; column `j` is `pi_j`.
pub(crate) const EXAMPLE_PERMUTATIONS: [[usize; 8]; 8] = [
    [7, 5, 5, 6, 0, 3, 0, 1],
    [6, 3, 7, 5, 2, 7, 2, 3],
    [2, 1, 3, 1, 6, 5, 6, 4],
    [4, 4, 1, 4, 5, 1, 3, 5],
    [0, 2, 6, 3, 1, 4, 7, 0],
    [5, 0, 4, 2, 4, 0, 5, 2],
    [3, 7, 2, 0, 3, 2, 1, 6],
    [1, 6, 0, 7, 7, 6, 4, 7],
];

/// Rows of the PBWT character matrix for [`EXAMPLE_STRINGS`].
pub(crate) const EXAMPLE_PBWT: [&str; 8] = [
    "TATTTCTT", "TCACTCCA", "TAGAGCTT", "GATAGAGA", "CTCAGAAA", "GATAAAAC", "AATAAAAT", "AAATCACT",
];

pub(crate) fn example() -> crate::StringCollection {
    crate::StringCollection::parse(EXAMPLE_STRINGS.as_bytes(), &crate::Alphabet::dna()).unwrap()
}

pub(crate) fn example_permutation(j: usize) -> Vec<usize> {
    EXAMPLE_PERMUTATIONS.iter().map(|row| row[j]).collect()
}
