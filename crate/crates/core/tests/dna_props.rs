use lumesh::dnacode::{
    decode_byte, dna_add, dna_complement, dna_sub, encode_byte, DnaByte, Nucleotide,
};

/// DNA addition table as printed: header row and column in order T, A, C, G.
const PRINTED_ADDITION: [&str; 4] = ["CGTA", "GCAT", "TACG", "ATGC"];
const ORDER: &str = "TACG";

fn nuc(c: char) -> Nucleotide {
    Nucleotide::try_from(c).unwrap()
}

#[test]
fn addition_matches_printed_table() {
    for (row, line) in ORDER.chars().zip(PRINTED_ADDITION) {
        for (col, expect) in ORDER.chars().zip(line.chars()) {
            assert_eq!(dna_add(nuc(row), nuc(col)), nuc(expect), "{row}+{col}");
        }
    }
}

#[test]
fn addition_is_klein_four_group() {
    let all = Nucleotide::ALL;
    for a in all {
        assert_eq!(dna_add(Nucleotide::C, a), a);
        assert_eq!(dna_add(a, Nucleotide::C), a);
        assert_eq!(dna_add(a, a), Nucleotide::C);
        for b in all {
            assert_eq!(dna_add(a, b), dna_add(b, a));
            for c in all {
                assert_eq!(dna_add(dna_add(a, b), c), dna_add(a, dna_add(b, c)));
            }
        }
    }
}

#[test]
fn subtraction_inverts_addition() {
    for a in Nucleotide::ALL {
        for b in Nucleotide::ALL {
            assert_eq!(dna_sub(dna_add(a, b), b), a);
            // unique solution
            let solutions: Vec<_> = Nucleotide::ALL
                .into_iter()
                .filter(|&n| dna_add(n, b) == a)
                .collect();
            assert_eq!(solutions, vec![dna_sub(a, b)]);
        }
    }
}

#[test]
fn complement_is_fixed_point_free_involution() {
    let pairs = [('A', 'T'), ('T', 'A'), ('C', 'G'), ('G', 'C')];
    for (x, y) in pairs {
        assert_eq!(dna_complement(nuc(x)), nuc(y));
    }
    for n in Nucleotide::ALL {
        assert_ne!(dna_complement(n), n);
        assert_eq!(dna_complement(dna_complement(n)), n);
    }
}

#[test]
fn byte_coding_is_bijective() {
    let mut seen = std::collections::HashSet::new();
    for b in 0..=255u8 {
        let d = encode_byte(b);
        assert_eq!(decode_byte(d), b);
        assert!(seen.insert(d));
        // independent bit decomposition
        let symbols: String = (0..4)
            .map(|i| ['A', 'G', 'C', 'T'][((b >> (6 - 2 * i)) & 0b11) as usize])
            .collect();
        assert_eq!(d.to_string(), symbols);
        assert_eq!(symbols.parse::<DnaByte>().unwrap(), d);
    }
}
