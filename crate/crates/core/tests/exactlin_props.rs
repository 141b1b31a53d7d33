//! Property tests for the exact linear algebra substrate: rank–nullity,
//! solve soundness, cokernel exactness and the field axioms, over both a
//! prime field and the rationals.

use proptest::prelude::*;
use quivercover::field::Field;
use quivercover::matrix::Matrix;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::prime(101).unwrap()),
        Just(Field::prime(32003).unwrap()),
        Just(Field::Rationals),
    ]
}

proptest! {
    #[test]
    fn rank_nullity(field in fields(), seed in 0u64..1000) {
        let m = make_matrix(field, seed);
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn solve_soundness(field in fields(), seed in 0u64..1000) {
        let a = make_matrix(field, seed);
        let x = make_shaped(field, seed ^ 0x9e37, a.cols(), 2);
        let b = a.mul(&x).unwrap();
        // a solvable system must be reported solvable and exactly satisfied
        let sol = a.solve(&b).unwrap().expect("constructed system is solvable");
        prop_assert_eq!(a.mul(&sol).unwrap(), b);
    }

    #[test]
    fn cokernel_exactness(field in fields(), seed in 0u64..1000) {
        let m = make_matrix(field, seed);
        let (p, dim) = m.cokernel_projection();
        prop_assert_eq!(m.rank() + dim, m.rows());
        prop_assert!(p.mul(&m).unwrap().is_zero());
        prop_assert_eq!(p.rank(), dim);
    }

    #[test]
    fn field_axioms(field in fields(), a in -20i64..20, b in -20i64..20, c in -20i64..20) {
        let (x, y, z) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        // associativity and distributivity
        prop_assert_eq!(
            field.mul(&field.mul(&x, &y), &z),
            field.mul(&x, &field.mul(&y, &z))
        );
        prop_assert_eq!(
            field.mul(&x, &field.add(&y, &z)),
            field.add(&field.mul(&x, &y), &field.mul(&x, &z))
        );
        if !field.is_zero(&x) {
            prop_assert_eq!(field.mul(&x, &field.inv(&x).unwrap()), field.one());
        }
    }
}

fn make_matrix(field: Field, seed: u64) -> Matrix {
    let mut rng = quivercover::rng::SplitMix64::new(seed);
    let r = 1 + (rng.below(4) as usize);
    let c = 1 + (rng.below(4) as usize);
    make_shaped(field, rng.next_u64(), r, c)
}

fn make_shaped(field: Field, seed: u64, r: usize, c: usize) -> Matrix {
    let mut rng = quivercover::rng::SplitMix64::new(seed);
    let ents: Vec<i64> = (0..r * c).map(|_| (rng.below(19) as i64) - 9).collect();
    Matrix::from_i64(field, r, c, &ents)
}
