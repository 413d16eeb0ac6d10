use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tight_basis::graph::UndirectedMultigraph;
use tight_basis::parity::{self, Parity, ParityQuery, ParitySolver};
use tight_basis::{corpus, oracle, Error};

fn red_count(o: &[usize], red: &[usize]) -> usize {
    o.iter().filter(|a| red.contains(a)).count()
}

#[test]
fn parity_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut graphs: Vec<UndirectedMultigraph> = corpus::small_multigraphs(5, 8);
    graphs.extend(corpus::named().into_iter().map(|n| n.graph).filter(|g| g.m() <= 9));
    let mut counts = [0usize; 3];
    for (i, g) in graphs.iter().enumerate() {
        for (_, f) in corpus::family_variants(g, i as u64) {
            let scos = oracle::enumerate_tight_scos(g, &f, 16).unwrap();
            let mut solver = ParitySolver::new(g.clone(), f.clone()).unwrap();
            for _ in 0..64 {
                let red = corpus::random_red(g, &mut rng);
                for target in [Parity::Odd, Parity::Even] {
                    let want = target == Parity::Odd;
                    let exists = scos.iter().any(|o| (red_count(o, &red) % 2 == 1) == want);
                    match solver.solve(&red, target) {
                        Ok(o) => {
                            let q = ParityQuery::new(g.clone(), f.clone(), red.clone(), target).unwrap();
                            assert!(q.accepts(&o), "{g:?} {f:?} {red:?} {target:?}");
                            counts[0] += 1;
                        }
                        Err(Error::NoSolution) => {
                            assert!(!exists && !scos.is_empty(), "{g:?} {f:?} {red:?} {target:?}");
                            counts[1] += 1;
                        }
                        Err(Error::Infeasible) => {
                            assert!(scos.is_empty(), "{g:?} {f:?} {target:?}");
                            counts[2] += 1;
                        }
                        Err(e) => panic!("{e:?}"),
                    }
                }
            }
        }
    }
    assert!(counts.iter().all(|&c| c > 100), "{counts:?}");
}

#[test]
fn gadget_doubles_even_solutions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (i, g) in corpus::small_multigraphs(4, 6).iter().enumerate() {
        for (_, f) in corpus::family_variants(g, i as u64) {
            let red = corpus::random_red(g, &mut rng);
            let q = ParityQuery::new(g.clone(), f.clone(), red.clone(), Parity::Even).unwrap();
            let q2 = parity::even_to_odd_gadget(&q).unwrap();
            let even: Vec<_> = oracle::enumerate_tight_scos(g, &q.family, 16)
                .unwrap()
                .into_iter()
                .filter(|o| red_count(o, &red).is_multiple_of(2))
                .collect();
            let odd2: Vec<_> = oracle::enumerate_tight_scos(&q2.graph, &q2.family, 16)
                .unwrap()
                .into_iter()
                .filter(|o| red_count(o, &q2.red) % 2 == 1)
                .collect();
            assert_eq!(odd2.len(), 2 * even.len());
            let m = g.m();
            for o in &odd2 {
                let extra: Vec<usize> = o.iter().copied().filter(|&a| a >= 2 * m).collect();
                assert!(extra == vec![2 * m, 2 * m + 3] || extra == vec![2 * m + 1, 2 * m + 2], "{extra:?}");
                assert!(even.contains(&parity::project(&q, o)));
            }
        }
    }
}

#[test]
fn fully_pinned_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in corpus::small_multigraphs(4, 7) {
        // every singleton pinned
        let f: Vec<Vec<usize>> = (0..g.n).map(|v| vec![v]).collect();
        let scos = oracle::enumerate_tight_scos(&g, &f, 16).unwrap();
        let mut solver = ParitySolver::new(g.clone(), f.clone()).unwrap();
        for _ in 0..8 {
            let red = corpus::random_red(&g, &mut rng);
            for target in [Parity::Odd, Parity::Even] {
                let want = target == Parity::Odd;
                let exists = scos.iter().any(|o| (red_count(o, &red) % 2 == 1) == want);
                match solver.solve(&red, target) {
                    Ok(o) => assert!(ParityQuery::new(g.clone(), f.clone(), red.clone(), target).unwrap().accepts(&o)),
                    Err(Error::NoSolution) => assert!(!exists && !scos.is_empty()),
                    Err(Error::Infeasible) => assert!(scos.is_empty()),
                    Err(e) => panic!("{e:?}"),
                }
            }
        }
    }
}
