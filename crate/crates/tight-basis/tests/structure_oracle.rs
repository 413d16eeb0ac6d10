use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tight_basis::corpus;
use tight_basis::feasibility::{self, DegreeSequence};
use tight_basis::graph::{mask, Digraft};
use tight_basis::oracle::{self, Kind};
use tight_basis::reduce::sco_digraft;
use tight_basis::structure::{self, Classification, Robustness, StructureWitness};
use tight_basis::Error;

fn with_random_tight(d: Digraft, rng: &mut ChaCha8Rng, out: &mut Vec<Digraft>) {
    let sources = d.sources();
    out.push(d.clone());
    let st: Vec<usize> = sources.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    if st.len() < sources.len() {
        out.push(d.with_tight_sources(st));
    }
}

fn digrafts() -> Vec<Digraft> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    for g in corpus::small_multigraphs(5, 7) {
        with_random_tight(sco_digraft(&g), &mut rng, &mut out);
    }
    for seed in 0..120u64 {
        let ns = 2 + (seed % 3) as usize;
        let nt = ns + (seed / 3 % 3) as usize;
        let m = (ns + nt + 2 + (seed / 9 % 4) as usize).min(13);
        with_random_tight(corpus::random_digraft(ns, nt, m, seed), &mut rng, &mut out);
    }
    out
}

#[test]
fn structure_agrees_with_oracle() {
    let mut counts = [0usize; 4];
    for d in digrafts() {
        let bs = oracle::brute_structure(&d, 24).unwrap();
        if !bs.covered {
            assert_eq!(structure::is_basic(&d), Err(Error::NotCovered));
            assert_eq!(structure::robustness(&d), Err(Error::NotCovered));
            continue;
        }
        let n = d.n();
        // flow search
        match structure::find_tight_dicut(&d).unwrap() {
            None => assert!(bs.tight_dicuts.is_empty(), "missed tight dicut in {d:?}"),
            Some(c) => assert!(bs.tight_dicuts.contains(&c.shore), "bad tight dicut {c:?} in {d:?}"),
        }
        // barrier / 2-separation witnesses
        let w = structure::is_basic(&d).unwrap();
        assert_eq!(w.is_none(), bs.tight_dicuts.is_empty());
        if !w.is_none() {
            assert!(!matches!(w, StructureWitness::TightDicut { .. }), "no barrier or 2-separation in {d:?}");
            let c = w.nontrivial_dicut(n).unwrap();
            assert!(bs.tight_dicuts.contains(&c.shore));
        }
        if let StructureWitness::Barrier { dicuts, set, .. } = structure::find_barrier_dicut(&d) {
            assert_eq!(d.components_after_removal(&set).unwrap().len(), set.len());
            for c in dicuts.iter().filter(|c| !c.is_trivial(n)) {
                assert!(bs.tight_dicuts.contains(&c.shore));
            }
        } else if d.source_count() < d.sink_count() {
            assert_eq!(feasibility::tight_sources(&d).unwrap(), d.tight_sources());
        }
        if let StructureWitness::TwoSeparation { dicuts, .. } = structure::find_two_separation(&d) {
            for c in &dicuts {
                assert!(bs.tight_dicuts.contains(&c.shore));
            }
        }
        // tight dicut predicate on every dicut, trivial ones included
        for shore in oracle::all_dicut_shores(&d) {
            let c = d.dicut(&shore).unwrap();
            let want = bs.tight_dijoins.iter().all(|j| {
                let jm = mask(d.m(), j);
                c.arcs.iter().filter(|&&a| jm[a]).count() == 1
            });
            assert_eq!(structure::is_tight_dicut(&d, &c).unwrap(), want);
        }
        // robustness
        match structure::robustness(&d).unwrap() {
            Robustness::Robust => assert!(bs.robust, "claimed robust: {d:?}"),
            Robustness::NotRobust { witness: StructureWitness::SeparatingDicut { dicut, cover, .. } } => {
                assert!(!bs.robust);
                let deg = DegreeSequence::of(&d, &cover);
                let tight = d.tight_mask();
                for v in 0..n {
                    let k = if d.is_source(v) {
                        deg.0[v]
                    } else {
                        cover.iter().filter(|&&a| d.arc(a).1 == v).count()
                    };
                    assert!(k >= 1);
                    if !d.is_source(v) || tight[v] {
                        assert_eq!(k, 1);
                    }
                }
                let cm = mask(d.m(), &cover);
                assert!(dicut.arcs.iter().all(|&a| !cm[a]));
            }
            r => panic!("unexpected {r:?}"),
        }
        let kind = match structure::classify(&d).unwrap() {
            Classification::Brick => Kind::Brick,
            Classification::Brace => Kind::Brace,
            Classification::NonBasic { .. } => Kind::NonBasic,
        };
        assert_eq!(kind, bs.kind);
        counts[kind as usize] += 1;
        counts[3] += usize::from(!bs.robust);
    }
    // the corpus exercises every branch
    assert!(counts.iter().all(|&c| c > 0), "{counts:?}");
}
