use proptest::prelude::*;
use qpoly_core::gram::{certify_psd, principal_minor_sums};
use qpoly_core::linalg::{characteristic_polynomial, exact_determinant, exact_rank, IntMatrix};
use qpoly_core::BigInt;

fn matrix(max_n: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
            IntMatrix::from_fn(n, |i, j| BigInt::from(v[i * n + j]))
        })
    })
}

fn cofactor_det(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if n == 1 {
        return m[(0, 0)].clone();
    }
    let mut acc = BigInt::from(0);
    for col in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != col).collect();
        let minor = cofactor_det(&m.submatrix(&rows, &cols));
        let term = &m[(0, col)] * minor;
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Whether every principal minor is nonnegative, by enumeration.
fn psd_by_minors(m: &IntMatrix) -> bool {
    let n = m.dim();
    (1u32..1 << n).all(|mask| {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        exact_determinant(&m.submatrix(&idx, &idx)) >= BigInt::from(0)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_cofactor_expansion(m in matrix(6)) {
        prop_assert_eq!(exact_determinant(&m), cofactor_det(&m));
    }

    #[test]
    fn determinant_invariant_under_simultaneous_permutation(
        m in matrix(6),
        seed in any::<u64>(),
    ) {
        let n = m.dim();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = m.permuted(&perm);
        prop_assert_eq!(exact_determinant(&p), exact_determinant(&m));
        prop_assert_eq!(exact_rank(&p), exact_rank(&m));
    }

    #[test]
    fn charpoly_constant_term_is_signed_determinant(m in matrix(6)) {
        let p = characteristic_polynomial(&m);
        let n = m.dim();
        let det = exact_determinant(&m);
        let expect = if n % 2 == 0 { det } else { -det };
        prop_assert_eq!(&p[n], &expect);
        prop_assert_eq!(principal_minor_sums(&m)[n].clone(), exact_determinant(&m));
    }

    #[test]
    fn psd_certificate_agrees_with_minor_enumeration(m in matrix(5)) {
        // M^t M is PSD; M + M^t usually is not.
        let n = m.dim();
        let gram = IntMatrix::from_fn(n, |i, j| (0..n).map(|l| &m[(l, i)] * &m[(l, j)]).sum());
        prop_assert!(certify_psd(&gram));
        prop_assert!(psd_by_minors(&gram));
        let sym = IntMatrix::from_fn(n, |i, j| &m[(i, j)] + &m[(j, i)]);
        prop_assert_eq!(certify_psd(&sym), psd_by_minors(&sym));
    }
}
