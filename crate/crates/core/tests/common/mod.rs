#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rand::RngCore;
use ultrafix::herbrand::{HerbrandSpace, Interpretation, LevelMap};
use ultrafix::lpfront::{
    infer_level_mapping, load_program, random_lh_program, tp_endofunction, GroundProgram,
};
use ultrafix::seqspace::{Seq, SeqSpace};
use ultrafix::solver::is_post_fixed;

use ultrafix::{derived_order, Distance, Endofunction, UltrametricSemilattice};

pub fn seq_space(cap: usize) -> SeqSpace {
    SeqSpace::new(&['a', 'b'], cap).unwrap()
}

fn truncate(mut items: Vec<char>, cap: usize) -> Seq {
    items.truncate(cap);
    Seq::new(items)
}

fn prepend(c: char, cap: usize) -> Endofunction<Seq> {
    Endofunction::new(format!("prepend {c}"), move |s: &Seq| {
        truncate(
            std::iter::once(c)
                .chain(s.items().iter().copied())
                .collect(),
            cap,
        )
    })
}

fn swap(c: char) -> char {
    if c == 'a' {
        'b'
    } else {
        'a'
    }
}

/// Contracting functions on binary sequences up to `cap`, with whether
/// each is strictly contracting.
pub fn seq_battery(cap: usize) -> Vec<(Endofunction<Seq>, bool)> {
    vec![
        (Endofunction::identity(), false),
        (Endofunction::constant(Seq::from("ab")), true),
        (
            Endofunction::new("first symbol", |s: &Seq| truncate(s.items().to_vec(), 1)),
            false,
        ),
        (
            Endofunction::new("swap", |s: &Seq| {
                Seq::new(s.items().iter().map(|&c| swap(c)).collect())
            }),
            false,
        ),
        (prepend('a', cap), true),
        (prepend('b', cap), true),
        (
            Endofunction::new("swap then prepend a", move |s: &Seq| {
                truncate(
                    std::iter::once('a')
                        .chain(s.items().iter().map(|&c| swap(c)))
                        .collect(),
                    cap,
                )
            }),
            true,
        ),
    ]
}

/// Seeded random locally hierarchical programs, `n_atoms` drawn from
/// `sizes` in turn.
pub fn lh_programs(count: usize, sizes: &[usize], seed: u64) -> Vec<GroundProgram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| load_program(&random_lh_program(&mut rng, sizes[i % sizes.len()])).unwrap())
        .collect()
}

pub struct LpCase {
    pub program: Arc<GroundProgram>,
    pub space: HerbrandSpace,
    pub f: Endofunction<Interpretation>,
    pub carrier: Vec<Interpretation>,
}

pub fn lp_case(program: GroundProgram) -> LpCase {
    let levels: LevelMap = infer_level_mapping(&program).unwrap();
    let program = Arc::new(program);
    let carrier = program.base().all_interpretations().unwrap();
    LpCase {
        f: tp_endofunction(&program),
        space: HerbrandSpace::new(levels),
        program,
        carrier,
    }
}

/// For every subset of the post-fixed points of `f` in `carrier` that is
/// directed and has a least upper bound in the carrier, checks that the
/// bound is post-fixed. Returns the number of
/// directed subsets examined and the offending subsets.
pub fn supremum_check<S: UltrametricSemilattice>(
    space: &S,
    f: &Endofunction<S::Elem>,
    carrier: &[S::Elem],
) -> (usize, Vec<u64>) {
    assert!(
        carrier.len() <= 16,
        "exhaustive subset search is limited to 16 elements"
    );
    let n = carrier.len();
    // up[i]: mask of carrier elements above carrier[i]
    let up: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| derived_order(space, &carrier[i], &carrier[j]))
                .fold(0, |m, j| m | 1 << j)
        })
        .collect();
    let post: Vec<usize> = (0..n)
        .filter(|&i| is_post_fixed(space, f, &carrier[i]))
        .collect();
    let mut directed = 0;
    let mut bad = Vec::new();
    for sub in 1u64..1 << post.len() {
        let members: Vec<usize> = (0..post.len())
            .filter(|b| sub >> b & 1 == 1)
            .map(|b| post[b])
            .collect();
        let dmask = members.iter().fold(0u64, |m, &i| m | 1 << i);
        let is_directed = members
            .iter()
            .all(|&i| members.iter().all(|&j| up[i] & up[j] & dmask != 0));
        if !is_directed {
            continue;
        }
        directed += 1;
        let bounds = members.iter().fold(u64::MAX >> (64 - n), |m, &i| m & up[i]);
        let lub = (0..n).find(|&u| bounds >> u & 1 == 1 && bounds & !up[u] == 0);
        if let Some(u) = lub {
            if !is_post_fixed(space, f, &carrier[u]) {
                bad.push(dmask);
            }
        }
    }
    (directed, bad)
}

/// Sequences whose meet always returns its first argument.
#[derive(Clone)]
pub struct LeftMeet(pub SeqSpace);

impl UltrametricSemilattice for LeftMeet {
    type Elem = Seq;
    fn meet(&self, a: &Seq, _: &Seq) -> Seq {
        a.clone()
    }
    fn distance(&self, a: &Seq, b: &Seq) -> Distance {
        self.0.distance(a, b)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Seq {
        self.0.sample(rng)
    }
    fn bottom(&self) -> Seq {
        self.0.bottom()
    }
    fn render(&self, a: &Seq) -> String {
        self.0.render(a)
    }
}

/// Every level map on atoms `a0..a{n-1}` with levels in `0..=max_level`.
pub fn all_level_maps(n: usize, max_level: u32) -> Vec<LevelMap> {
    let k = max_level as usize + 1;
    (0..k.pow(n as u32))
        .map(|code| {
            let mut c = code;
            LevelMap::new((0..n).map(|i| {
                let l = (c % k) as u32;
                c /= k;
                (format!("a{i}"), l)
            }))
            .unwrap()
        })
        .collect()
}
