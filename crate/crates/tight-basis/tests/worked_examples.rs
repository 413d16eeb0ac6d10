use tight_basis::basis::{self, EarDecomposition};
use tight_basis::corpus;
use tight_basis::feasibility;
use tight_basis::oracle;
use tight_basis::sfm::{self, BarrierSide};
use tight_basis::structure::{self, StructureWitness};

fn shores(w: &StructureWitness) -> Vec<Vec<usize>> {
    let dicuts = match w {
        StructureWitness::TwoSeparation { dicuts, .. } => dicuts,
        _ => panic!("{w:?}"),
    };
    let mut s: Vec<Vec<usize>> = dicuts.iter().map(|c| c.shore.clone()).collect();
    s.sort();
    s
}

#[test]
fn barrier_example() {
    let d = corpus::barrier_example();
    let bs = oracle::brute_structure(&d, 24).unwrap();
    assert!(bs.covered);
    assert_eq!(d.components_after_removal(&[6, 7, 8]).unwrap(), vec![vec![0, 1, 5], vec![2], vec![3, 4, 9, 10]]);
    let (x, v) = sfm::min_barrier_deficiency(&d, BarrierSide::Sinks, &[6, 7, 8], &[]).unwrap();
    // any minimiser will do; {6,7,8} and {5,6,7,8} both have deficiency 0
    assert_eq!(v, 0);
    assert!([6, 7, 8].iter().all(|s| x.contains(s)), "{x:?}");
    // the finder may return a larger barrier; every nontrivial dicut it gives is tight
    match structure::find_barrier_dicut(&d) {
        StructureWitness::Barrier { set, dicuts, .. } => {
            assert_eq!(set.len(), dicuts.len());
            for c in dicuts.iter().filter(|c| !c.is_trivial(d.n())) {
                assert!(bs.tight_dicuts.contains(&c.shore), "{:?}", c.shore);
            }
        }
        w => panic!("{w:?}"),
    }
    for s in [vec![0, 1, 5], vec![3, 4, 9, 10]] {
        assert!(bs.tight_dicuts.contains(&s));
        assert!(structure::is_tight_dicut(&d, &d.dicut(&s).unwrap()).unwrap());
    }
}

#[test]
fn two_separation_example() {
    let d = corpus::two_separation_example();
    let bs = oracle::brute_structure(&d, 24).unwrap();
    assert!(bs.covered);
    let w = structure::find_two_separation(&d);
    assert!(matches!(w, StructureWitness::TwoSeparation { u: 1, v: 5, .. }));
    assert_eq!(shores(&w), vec![vec![0, 1, 3, 4], vec![1, 2, 6]]);
    for s in shores(&w) {
        assert!(bs.tight_dicuts.contains(&s));
    }
}

#[test]
fn ear_example() {
    let d = corpus::ear_example();
    assert!(d.is_tight_dijoin(&[0, 2, 5, 7]));
    let given = EarDecomposition { s0: 0, initial: vec![0, 2], ears: vec![vec![4, 5, 1], vec![8, 7, 3], vec![6]], j0: vec![0, 2, 5, 7] };
    let computed = basis::ear_decomposition(&d).unwrap();
    for ed in [&given, &computed] {
        // F plus three ears
        assert_eq!((ed.initial.len(), ed.ears.len()), (2, 3));
        assert_eq!(ed.initial.len() + ed.ears.iter().map(Vec::len).sum::<usize>(), d.m());
        for i in 0..=ed.ears.len() {
            let (p, _) = ed.prefix_digraft(&d, i);
            assert!(feasibility::find_tight_dijoin(&p).is_ok(), "prefix {i}");
        }
        let b = basis::elementary_basis_with(&d, ed).unwrap();
        assert_eq!(b.len(), 4);
        let m = basis::marker_matrix(ed, &b);
        for (r, row) in m.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(r == c || (r < c && x == 1)), "{m:?}");
            }
        }
        let mut r = basis::digraft_basis(&d).unwrap();
        r.certify(&d, 24).unwrap();
        assert!(r.certified);
    }
    // an elementary digraft is robust
    assert!(oracle::brute_structure(&d, 24).unwrap().robust);
}

#[test]
fn balanced_and_brick_tight_sources() {
    // |S| = |T|: every source is tight whatever Sᵗ says
    let hex = tight_basis::reduce::sco_digraft(&corpus::triangle());
    assert_eq!(feasibility::tight_sources(&hex).unwrap(), hex.sources());
    // a brick has no tight sources beyond Sᵗ
    let theta = tight_basis::reduce::sco_digraft(&corpus::theta3());
    assert_eq!(structure::classify(&theta).unwrap(), structure::Classification::Brick);
    assert_eq!(feasibility::tight_sources(&theta).unwrap(), Vec::<usize>::new());
}
