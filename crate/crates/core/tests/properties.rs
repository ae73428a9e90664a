use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kleinring::catalog::{Base, FamilyId, LatticeDesc};
use kleinring::cohomology::tate;
use kleinring::lattice::{quiver, TypedLattice, VectorRank};
use kleinring::linalg::{smith, RMatrix, Zpn};
use kleinring::spec_lang::parse_spec;
use kleinring::Error;

fn matrix(p: u64) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    let bound = (p * p * p) as i64;
    (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| (Just(r), Just(c), prop::collection::vec(0..bound, r * c)))
}

fn random_lattice(ring: Zpn, seed: u64, bullet: usize) -> Option<TypedLattice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let arms = [0; 4].map(|_| rand::Rng::gen_range(&mut rng, 0..=bullet));
        if let Some(rep) = quiver::random_rep(ring.p(), VectorRank { bullet, arms }, &mut rng) {
            return TypedLattice::realize(ring, &rep).ok();
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_round_trip((r, c, data) in matrix(3)) {
        let ring = Zpn::new(3, 16).unwrap();
        let m = RMatrix::from_fn(ring, r, c, |i, j| data[i * c + j]);
        let f = match smith(&m) {
            Err(Error::PrecisionExhausted { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let d = f.left.mul(&m).mul(&f.right);
        for i in 0..r {
            for j in 0..c {
                if i == j {
                    prop_assert_eq!(d.valuation(i, j), f.pivots[i]);
                } else {
                    prop_assert_eq!(d.get(i, j), 0);
                }
            }
        }
        prop_assert_eq!(f.left.mul(&f.left_inv), RMatrix::identity(ring, r));
        prop_assert_eq!(f.right.mul(&f.right_inv), RMatrix::identity(ring, c));
    }

    #[test]
    fn tate_is_additive(s1 in any::<u64>(), s2 in any::<u64>(), b1 in 1usize..3, b2 in 1usize..3, n in -3i64..=3) {
        let ring = Zpn::new(2, 16).unwrap();
        let (Some(a), Some(b)) = (random_lattice(ring, s1, b1), random_lattice(ring, s2, b2)) else {
            return Ok(());
        };
        let sum = a.direct_sum(&b);
        prop_assert_eq!(tate(&sum, n).unwrap(), tate(&a, n).unwrap().direct_sum(&tate(&b, n).unwrap()));
    }

    #[test]
    fn spec_display_parses_back(bases in prop::collection::vec((0usize..5, -4i32..=4), 1..4), r in 1usize..4) {
        let mut parts: Vec<LatticeDesc> =
            bases.iter().map(|&(b, k)| LatticeDesc::Family(FamilyId { base: Base::ALL[b], k })).collect();
        parts.push(LatticeDesc::Free(r));
        let desc = LatticeDesc::Sum(parts);
        prop_assert_eq!(parse_spec(5, &desc.to_string()).unwrap(), desc);
    }
}

#[test]
fn random_lattices_are_produced() {
    let ring = Zpn::new(2, 16).unwrap();
    let built = (0..32).filter(|&s| random_lattice(ring, s, 2).is_some()).count();
    assert!(built >= 16, "{built}");
}
