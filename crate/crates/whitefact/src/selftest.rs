//! The acceptance suite: eight property checks, each with a time limit.
//!
//! Random instances are drawn sequentially from one seeded generator per
//! criterion and only then checked in parallel, so the outcome does not
//! depend on the thread count.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use whitefact_core::{
    sample, AlphaLabel, FactorAutoPart, FactorGroup, FactorSystem, Factorization, PureSymmetricAuto, WhiteheadAuto,
    Word,
};

/// Failure messages kept per criterion; the count is always exact.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Duration,
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "geodesic length equals BFS distance", limit: Duration::from_secs(10) },
    Criterion { id: 2, name: "geodesic midpoints", limit: Duration::from_secs(10) },
    Criterion { id: 3, name: "volume-decrease law", limit: Duration::from_secs(30) },
    Criterion { id: 4, name: "base characterization", limit: Duration::from_secs(60) },
    Criterion { id: 5, name: "factorization round-trip", limit: Duration::from_secs(60) },
    Criterion { id: 6, name: "ball of volume 9 in K3", limit: Duration::from_secs(120) },
    Criterion { id: 7, name: "stabilizer classification", limit: Duration::from_secs(30) },
    Criterion { id: 8, name: "mutation sensitivity", limit: Duration::from_secs(10) },
];

#[derive(Debug, Clone)]
pub struct Outcome {
    pub criterion: Criterion,
    pub checked: usize,
    pub failures: usize,
    pub examples: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0 && self.elapsed <= self.criterion.limit
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.criterion;
        write!(
            f,
            "[{}] {} {}: {} checks, {} failures, {:.2} s (limit {} s)",
            if self.passed() { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            self.checked,
            self.failures,
            self.elapsed.as_secs_f64(),
            c.limit.as_secs()
        )?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    examples: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.examples.len() < KEPT_FAILURES {
            self.examples.push(msg);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        for e in other.examples {
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(e);
            }
        }
        self.failures += other.failures;
        self
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .map(|x| {
            let mut t = Tally::default();
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn k3() -> FactorSystem {
    FactorSystem::cyclic(&[2, 2, 2]).expect("valid system")
}

fn z3z4z2() -> FactorSystem {
    FactorSystem::cyclic(&[3, 4, 2]).expect("valid system")
}

fn z3z4z2z2() -> FactorSystem {
    FactorSystem::cyclic(&[3, 4, 2, 2]).expect("valid system")
}

fn z3_int_z2() -> FactorSystem {
    FactorSystem::new(vec![FactorGroup::cyclic(3), FactorGroup::InfiniteCyclic, FactorGroup::cyclic(2)])
        .expect("valid system")
}

fn rng_for(seed: u64, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(u64::from(id)))
}

pub fn run(id: u8, seed: u64) -> Option<Outcome> {
    let criterion = *CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let mut rng = rng_for(seed, id);
    let t = match id {
        1 => geodesic_oracle(),
        2 => halfway(&mut rng),
        3 => volume_decrease(&mut rng),
        4 => base_characterization(),
        5 => round_trip(&mut rng),
        6 => ball_nine(),
        7 => stabilizers(),
        _ => mutations(&mut rng),
    };
    Some(Outcome { criterion, checked: t.checked, failures: t.failures, examples: t.examples, elapsed: start.elapsed() })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.id, seed)).collect()
}

fn geodesic_oracle() -> Tally {
    let mut total = Tally::default();
    for s in [k3(), z3z4z2()] {
        let ball = s.bfs_ball(&s.u_vertex(s.one()), 6).expect("finite system");
        let idx: Vec<usize> = (0..ball.vertices.len()).collect();
        let t = par_tally(&idx, |&i, t| {
            let dist = ball.distances_from(i);
            let p = &ball.vertices[i];
            for (j, q) in ball.vertices.iter().enumerate() {
                let path = s.geodesic(p, q);
                let adjacent = path.windows(2).all(|w| {
                    match (ball.index_of(&w[0]), ball.index_of(&w[1])) {
                        (Some(a), Some(b)) => ball.adjacency[a].contains(&b),
                        _ => false,
                    }
                });
                let ok = path.len() == dist[j] + 1
                    && path.first() == Some(p)
                    && path.last() == Some(q)
                    && adjacent
                    && s.distance(p, q) == dist[j];
                t.check(ok, || format!("{p} -> {q}: geodesic {} vs BFS {}", path.len() - 1, dist[j]));
            }
        });
        total = total.merge(t);
    }
    total
}

fn halfway(rng: &mut ChaCha8Rng) -> Tally {
    let systems = [k3(), z3z4z2(), z3_int_z2()];
    let mut cases = Vec::with_capacity(1000);
    while cases.len() < 1000 {
        let si = cases.len() % systems.len();
        let s = &systems[si];
        let n = s.rank();
        let (j, k) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (lj, lk) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let p = s.c_vertex(j, &sample::word(s, rng, lj, Some(j)));
        let mid = s.c_vertex(k, &sample::word(s, rng, lk, Some(k)));
        if p == mid {
            continue;
        }
        let b = s.letter(&sample::element(s, rng, k));
        let h = s.conj(&b, mid.rep());
        cases.push((si, p, mid, h));
    }
    par_tally(&cases, |(si, p, mid, h), t| {
        let s = &systems[*si];
        let path = s.geodesic(p, &s.v_act(p, h));
        let ok = path.len() % 2 == 1 && path[path.len() / 2] == *mid;
        t.check(ok, || format!("{mid} is not the midpoint of [{p}, {p}·{h}]"));
    })
}

fn volume_decrease(rng: &mut ChaCha8Rng) -> Tally {
    let systems = [k3(), z3z4z2(), z3z4z2z2(), z3_int_z2()];
    let e = systems.iter().map(FactorSystem::one).collect::<Vec<_>>();
    let mut labels: Vec<(usize, AlphaLabel)> = Vec::with_capacity(1000);
    while labels.len() < 1000 {
        let si = labels.len() % systems.len();
        let s = &systems[si];
        let l = sample::splitting(s, rng, 5);
        if s.volume(&l, &e[si]) > s.rank() {
            labels.push((si, l));
        }
    }
    par_tally(&labels, |(si, l), t| {
        let (s, e) = (&systems[*si], &e[*si]);
        let mut current = l.clone();
        while s.volume(&current, e) > s.rank() {
            let (next, mv) = match s.reduce_step(&current, e) {
                Ok(step) => step,
                Err(err) => {
                    t.fail(format!("{current}: {err}"));
                    return;
                }
            };
            let drop = mv.vol_before.checked_sub(mv.vol_after);
            let even = drop.is_some_and(|d| d >= 2 && d % 2 == 0);
            let consistent = mv.vol_before == s.volume(&current, e) && mv.vol_after == s.volume(&next, e);
            let through_a = s.a_equivalent(&s.collapses(&current)[mv.i], &s.collapses(&next)[mv.i]);
            t.check(even && consistent && through_a, || {
                format!("{current} -> {next}: volume {} -> {}, A-equivalent {through_a}", mv.vol_before, mv.vol_after)
            });
            current = next;
        }
        t.check(current == s.base_alpha(), || format!("{l} reduced to {current}, not the base"));
    })
}

fn base_characterization() -> Tally {
    let s = k3();
    let n = s.rank();
    let per_slot: Vec<Vec<Word>> = (0..n)
        .map(|k| (0..=2).flat_map(|len| s.words_of_length(len, Some(k)).expect("finite")).collect())
        .collect();
    // Volume n at U·x forces x ∈ G_1 g_1, so |x| ≤ 3 covers every witness.
    let witnesses = s.words_up_to(3).expect("finite");
    let mut tuples: Vec<Vec<Word>> = vec![vec![]];
    for slot in &per_slot {
        tuples = tuples
            .into_iter()
            .flat_map(|p| {
                slot.iter().map(move |w| {
                    let mut q = p.clone();
                    q.push(w.clone());
                    q
                })
            })
            .collect();
    }
    par_tally(&tuples, |slots, t| {
        let l = s.alpha_label(slots.clone()).expect("arity");
        let by_api = s.is_base(&l);
        let by_witness = witnesses.iter().any(|x| s.volume(&l, x) == n);
        let by_equivalence = s.alpha_equivalent(&l, &s.base_alpha()).is_some();
        let witness_ok = s.base_witness(&l).is_none_or(|x| s.volume(&l, &x) == n);
        t.check(by_api == by_witness && by_witness == by_equivalence && witness_ok, || {
            format!("{l}: is_base {by_api}, witness {by_witness}, equivalent {by_equivalence}")
        });
    })
}

fn round_trip(rng: &mut ChaCha8Rng) -> Tally {
    let systems = [k3(), z3z4z2z2()];
    let mut autos = Vec::with_capacity(400);
    for (si, s) in systems.iter().enumerate() {
        for _ in 0..200 {
            autos.push((si, sample::automorphism(s, rng, 6)));
        }
    }
    par_tally(&autos, |(si, psi), t| {
        let s = &systems[*si];
        let vol = s.volume(&s.alpha_label(psi.conj().to_vec()).expect("arity"), &s.one());
        match s.factorize(psi) {
            Ok(f) => {
                let bound = (vol - s.rank()) / 2;
                let ok = s.verify_factorization(psi, &f)
                    && f.whitehead.len() <= bound
                    && s.factorization_psa(&f).as_ref() == Ok(psi);
                t.check(ok, || format!("{psi:?}: {} Whiteheads, bound {bound}", f.whitehead.len()));
            }
            Err(e) => t.fail(format!("{psi:?}: {e}")),
        }
    })
}

fn ball_nine() -> Tally {
    let s = k3();
    let mut t = Tally::default();
    let candidates = s.ball_candidates(9).expect("finite system");
    let splitting: Vec<AlphaLabel> = candidates.into_par_iter().filter(|l| s.is_splitting(l)).collect();
    let ball = s.assemble_ball(9, splitting);
    let report = s.check_ball(&ball);
    t.checked = report.alpha_classes + report.a_classes + report.edges;
    for f in report.failures {
        t.fail(format!("{f:?}"));
    }
    let base = ball.alpha.iter().position(|l| s.is_base(l));
    let base_edges = base.map_or(0, |b| ball.edges.iter().filter(|&&(l, _)| l == b).count());
    t.check(base_edges == s.rank(), || format!("base has {base_edges} collapse neighbours"));
    t
}

fn factor_autos(s: &FactorSystem) -> Vec<Vec<FactorAutoPart>> {
    let mut out: Vec<Vec<FactorAutoPart>> = vec![vec![]];
    for k in 0..s.rank() {
        let maps = s.factor(k).all_automorphisms().expect("finite");
        out = out
            .into_iter()
            .flat_map(|p| {
                maps.iter().map(move |m| {
                    let mut q = p.clone();
                    q.push(FactorAutoPart { factor: k, map: m.clone() });
                    q
                })
            })
            .collect();
    }
    out
}

fn single_target_whiteheads(s: &FactorSystem) -> Vec<WhiteheadAuto> {
    let mut out = Vec::new();
    for i in 0..s.rank() {
        for x in s.nontrivial_elements(i).expect("finite") {
            for j in (0..s.rank()).filter(|&j| j != i) {
                out.push(s.whitehead(&[j], x.clone()).expect("valid Whitehead"));
            }
        }
    }
    out
}

fn stabilizers() -> Tally {
    let mut total = Tally::default();
    for s in [k3(), z3z4z2()] {
        // (ψ, operating factor or None for a factor automorphism)
        let mut cases: Vec<(PureSymmetricAuto, Option<usize>)> = Vec::new();
        for phi in factor_autos(&s) {
            cases.push((s.factor_psa(&phi), None));
        }
        for w in single_target_whiteheads(&s) {
            cases.push((s.whitehead_psa(&w), Some(w.operating())));
        }
        let inners = s.words_up_to(2).expect("finite");
        let t = par_tally(&cases, |(psi, operating), t| {
            for i in 0..s.rank() {
                let expected = operating.is_none_or(|op| op == i);
                let got = s.decompose_a_stabiliser(psi, i);
                let ok = match &got {
                    Ok(f) => {
                        expected
                            && s.verify_factorization(psi, f)
                            && f.whitehead.iter().all(|w| w.operating() == i)
                    }
                    Err(_) => !expected,
                };
                t.check(ok, || format!("apex {}: {psi:?} expected {expected}", i + 1));
            }
            for h in &inners {
                let with_inner = s.compose(psi, &s.inner_psa(h));
                let got = s.decompose_alpha_stabiliser(&with_inner);
                let ok = match &got {
                    Ok(f) => operating.is_none() && f.whitehead.is_empty() && s.verify_factorization(&with_inner, f),
                    Err(_) => operating.is_some(),
                };
                t.check(ok, || format!("α-stabiliser: {with_inner:?}"));
            }
        });
        total = total.merge(t);
    }
    total
}

/// Every single-Whitehead mutation of `f`: deletion, each other element of
/// the operating factor, and each other single target.
fn mutants(s: &FactorSystem, f: &Factorization) -> Vec<Factorization> {
    let mut out = Vec::new();
    for (p, w) in f.whitehead.iter().enumerate() {
        let mut deleted = f.clone();
        deleted.whitehead.remove(p);
        out.push(deleted);
        let i = w.operating();
        for x in s.nontrivial_elements(i).expect("finite").into_iter().filter(|x| x != w.x()) {
            let mut m = f.clone();
            m.whitehead[p] = s.whitehead(w.targets(), x).expect("valid Whitehead");
            out.push(m);
        }
        for j in (0..s.rank()).filter(|&j| j != i && !w.targets().contains(&j)) {
            let mut m = f.clone();
            m.whitehead[p] = s.whitehead(&[j], w.x().clone()).expect("valid Whitehead");
            out.push(m);
        }
    }
    out
}

fn mutations(rng: &mut ChaCha8Rng) -> Tally {
    let systems = [k3(), z3z4z2()];
    let mut cases = Vec::with_capacity(50);
    while cases.len() < 50 {
        let si = cases.len() % systems.len();
        let s = &systems[si];
        let psi = sample::automorphism(s, rng, 5);
        match s.factorize(&psi) {
            Ok(f) if !f.whitehead.is_empty() => cases.push((si, psi, f)),
            _ => {}
        }
    }
    par_tally(&cases, |(si, psi, f), t| {
        let s = &systems[*si];
        t.check(s.verify_factorization(psi, f), || format!("{psi:?}: unmutated factorization rejected"));
        for m in mutants(s, f) {
            t.check(!s.verify_factorization(psi, &m), || format!("{psi:?}: mutant accepted {:?}", m.whitehead));
        }
    })
}
