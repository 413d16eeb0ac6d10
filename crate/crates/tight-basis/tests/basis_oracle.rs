use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tight_basis::basis;
use tight_basis::corpus;
use tight_basis::feasibility;
use tight_basis::graph::{Dicut, Digraft};
use tight_basis::oracle::{self, Kind};
use tight_basis::reduce::sco_digraft;
use tight_basis::structure::{self, Robustness, StructureWitness};
use tight_basis::Error;

fn digrafts() -> Vec<Digraft> {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut out = Vec::new();
    let mut push = |d: Digraft, rng: &mut ChaCha8Rng| {
        let st: Vec<usize> = d.sources().into_iter().filter(|_| rng.gen_bool(0.3)).collect();
        out.push(d.clone());
        if st.len() < d.source_count() {
            out.push(d.with_tight_sources(st));
        }
    };
    for g in corpus::small_multigraphs(5, 7) {
        push(sco_digraft(&g), &mut rng);
    }
    for seed in 0..150u64 {
        let ns = 2 + (seed % 3) as usize;
        let nt = ns + 1 + (seed / 3 % 3) as usize;
        let m = (ns + nt + 2 + (seed / 9 % 5) as usize).min(14);
        push(corpus::random_digraft(ns, nt, m, 1000 + seed), &mut rng);
    }
    out
}

#[test]
fn bases_are_certified() {
    let (mut nonrobust_bricks, mut total) = (0, 0);
    for d in digrafts() {
        let bs = oracle::brute_structure(&d, 24).unwrap();
        if !bs.covered {
            assert_eq!(basis::digraft_basis(&d).err(), Some(Error::Infeasible));
            continue;
        }
        total += 1;
        if bs.kind == Kind::Brick && !bs.robust {
            nonrobust_bricks += 1;
            assert!(matches!(structure::robustness(&d).unwrap(), Robustness::NotRobust { .. }));
        }
        let mut r = basis::digraft_basis(&d).unwrap_or_else(|e| panic!("{e:?} on {d:?}"));
        r.certify(&d, 24).unwrap();
        let want = d.m() + 2 - bs.tight_nodes.len() - bs.bricks;
        assert_eq!(r.size_formula.expected, want, "{d:?}");
        assert!(r.certified, "{:?} {:?} on {d:?}", r.size_formula, r.oracle);
    }
    eprintln!("covered {total}, non-robust bricks {nonrobust_bricks}");
    assert!(nonrobust_bricks > 0);
}

fn crossing(c: &Dicut, j: &[usize]) -> usize {
    j.iter().filter(|a| c.arcs.contains(a)).count()
}

/// `hi` dominates `lo`: no tight dijoin crosses `hi` more often.
fn dominates(js: &[Vec<usize>], hi: &Dicut, lo: &Dicut) -> bool {
    js.iter().all(|j| crossing(hi, j) <= crossing(lo, j))
}

#[test]
fn non_robust_brick_pipeline() {
    let mut seen = 0;
    for d in digrafts() {
        let bs = oracle::brute_structure(&d, 24).unwrap();
        if !(bs.covered && bs.kind == Kind::Brick && !bs.robust) {
            continue;
        }
        seen += 1;
        let js = &bs.tight_dijoins;
        let Robustness::NotRobust { witness: StructureWitness::SeparatingDicut { dicut, cover, .. } } =
            structure::robustness(&d).unwrap()
        else {
            panic!("no separating dicut on {d:?}");
        };
        let (c, steps) = basis::find_contractible(&d, &dicut, &cover).unwrap();
        assert!(steps <= d.n(), "{steps} separating steps on {d:?}");
        assert!(dominates(js, &c, &dicut));
        // λ = 1 is reachable on a non-tight dicut of a covered digraft
        let j1 = feasibility::jump_free(&d, &c, 1).unwrap();
        assert!(d.is_tight_dijoin(&j1) && crossing(&c, &j1) == 1);

        let (g, chain) = basis::find_good_dicut(&d, &c).unwrap();
        assert!(chain.steps <= d.m() + d.n(), "{} chain steps on {d:?}", chain.steps);
        assert_eq!(chain.certificates.len() + 1, chain.dicuts.len());
        for (i, j) in chain.certificates.iter().enumerate() {
            assert!(d.is_tight_dijoin(j));
            assert_eq!(crossing(&chain.dicuts[i], j), 2);
            assert_eq!(crossing(&chain.dicuts[i + 1], j), 1);
            assert!(dominates(js, &chain.dicuts[i + 1], &chain.dicuts[i]));
        }
        assert!(dominates(js, &g, &c));
        assert!(!bs.tight_dicuts.contains(&g.shore));
        let j0 = feasibility::jump_free(&d, &g, 2).unwrap();
        assert_eq!(crossing(&g, &j0), 2);
    }
    assert!(seen > 50, "{seen}");
}

#[test]
fn robust_brick_tail() {
    let mut seen = 0;
    for d in digrafts() {
        let bs = oracle::brute_structure(&d, 24).unwrap();
        if !(bs.covered && bs.kind == Kind::Brick && bs.robust) {
            continue;
        }
        let b = basis::robust_basis(&d).unwrap();
        assert_eq!(b.len(), d.m() + 1 - d.tight_sources().len() - d.sink_count());
        let free = d.sources().len() - d.tight_sources().len();
        // one degree-2 dijoin per promoted source, at the end
        for j in &b[b.len() + 1 - free..] {
            assert!(d.is_tight_dijoin(j));
            let deg2 = d.sources().into_iter().filter(|&s| j.iter().filter(|&&a| d.arc(a).0 == s).count() == 2);
            assert!(deg2.count() >= 1, "{j:?} on {d:?}");
        }
        let cert = oracle::verify_arc_sets(&b, &bs.tight_dijoins, d.m());
        assert!(cert.certified, "{d:?}");
        seen += 1;
    }
    assert!(seen > 20, "{seen}");
}

#[test]
fn elementary_ear_decompositions() {
    let mut seen = 0;
    for d in digrafts() {
        let sources = d.sources();
        let e = d.with_tight_sources(sources[1..].to_vec());
        let bs = oracle::brute_structure(&e, 24).unwrap();
        if !bs.covered {
            assert!(basis::ear_decomposition(&e).is_err());
            continue;
        }
        seen += 1;
        let ed = basis::ear_decomposition(&e).unwrap();
        assert_eq!(ed.ears.len(), e.m() + 1 - e.n(), "{e:?}");
        for i in 0..=ed.ears.len() {
            // every prefix is covered by its own tight dijoins
            let (p, _) = ed.prefix_digraft(&e, i);
            let pj = oracle::enumerate_tight_dijoins(&p, 24).unwrap();
            let mut used = vec![false; p.m()];
            pj.iter().flatten().for_each(|&a| used[a] = true);
            assert!(used.iter().all(|&u| u), "prefix {i} of {e:?}");
        }
        let b = basis::elementary_basis_with(&e, &ed).unwrap();
        let mm = basis::marker_matrix(&ed, &b);
        for (r, row) in mm.iter().enumerate() {
            assert_eq!(row[r], 1);
            assert!(row[..r].iter().all(|&x| x == 0), "{mm:?}");
        }
        assert!(oracle::verify_arc_sets(&b, &bs.tight_dijoins, e.m()).certified);
    }
    assert!(seen > 50, "{seen}");
}
