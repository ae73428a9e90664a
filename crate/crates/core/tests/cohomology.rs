use kleinring::catalog::{Base, FamilyId, Lambda, LatticeDesc, TubeId};
use kleinring::cohomology::{self, expected, expected_homology};
use kleinring::linalg::{FpPoly, Zpn};

fn ring(p: u64) -> Zpn {
    Zpn::new(p, 16).unwrap()
}

#[test]
fn family_tables_match_closed_forms() {
    for p in [2, 3, 5] {
        for base in Base::ALL {
            for k in -3..=3 {
                let desc = LatticeDesc::Family(FamilyId { base, k });
                let l = desc.build(ring(p)).unwrap();
                for (n, h) in cohomology::tate_table(&l, -6, 6).unwrap() {
                    assert_eq!(h, expected(&desc, n).unwrap(), "p={p} {desc} n={n}");
                }
            }
        }
    }
}

#[test]
fn homology_matches_closed_forms() {
    for p in [2, 3, 5] {
        for base in Base::ALL {
            let l = base.build(ring(p));
            for n in 0..=6 {
                assert_eq!(cohomology::homology_h(&l, n).unwrap(), expected_homology(base, n), "p={p} {base} n={n}");
            }
        }
    }
}

#[test]
fn tube_tables_match_closed_forms() {
    let homogeneous = [
        FpPoly::new(2, vec![1, 1, 1]),
        FpPoly::new(2, vec![1, 1, 0, 1]),
        FpPoly::linear(5, 2),
        FpPoly::linear(5, 3),
    ];
    for f in homogeneous {
        let p = f.p();
        for m in 1..=4 {
            let id = TubeId::homogeneous(f.clone(), m);
            let l = id.build(ring(p)).unwrap();
            for (n, h) in cohomology::tate_table(&l, -6, 6).unwrap() {
                assert_eq!(h, cohomology::expected_tube(&id, n).unwrap(), "{id} n={n}");
            }
        }
    }
    for p in [2, 3] {
        for lambda in Lambda::ALL {
            for i in 1..=2 {
                for m in 1..=5 {
                    let id = TubeId::exceptional(lambda, i, m);
                    let l = id.build(ring(p)).unwrap();
                    for (n, h) in cohomology::tate_table(&l, -6, 6).unwrap() {
                        assert_eq!(h, cohomology::expected_tube(&id, n).unwrap(), "p={p} {id} n={n}");
                    }
                }
            }
        }
    }
}
