//! Small random CP-theories for property tests and benchmarks.
//!
//! Generated theories are stratified: atom `p<i>` lives in stratum `i / 2`,
//! positive body atoms come from the head's stratum or below, and negated
//! body atoms come from strictly lower strata. Execution models of such
//! theories never get stuck on a negation, so every leaf is complete.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::prob::Probability;
use crate::theory::{
    validate_theory, HeadAlternative, Interpretation, LawCandidate, Literal, Theory, TheoryCandidate, Vocabulary,
};

#[derive(Clone, Copy, Debug)]
pub struct GeneratorConfig {
    pub max_atoms: usize,
    pub max_laws: usize,
    pub max_head: usize,
    pub max_body: usize,
    pub max_exogenous: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig { max_atoms: 6, max_laws: 5, max_head: 2, max_body: 2, max_exogenous: 2 }
    }
}

fn stratum(i: usize) -> usize {
    i / 2
}

fn random_head<R: Rng>(rng: &mut R, heads: &[usize], vocab: &Vocabulary) -> Vec<HeadAlternative> {
    let atoms: Vec<_> = vocab.atoms().collect();
    if rng.gen_bool(0.25) {
        // Deterministic single-atom head.
        return vec![HeadAlternative::new(atoms[heads[0]], Probability::one())];
    }
    let denom: u32 = rng.gen_range(heads.len() as u32 + 1..=6);
    let mut budget = denom;
    heads
        .iter()
        .enumerate()
        .map(|(k, &h)| {
            let reserve = (heads.len() - k - 1) as u32;
            let n = rng.gen_range(1..=budget - reserve);
            budget -= n;
            HeadAlternative::new(atoms[h], Probability::new(n, denom))
        })
        .collect()
}

/// A random valid stratified theory.
pub fn random_theory<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> Theory {
    let n_atoms = rng.gen_range(2..=cfg.max_atoms.max(2));
    let mut vocab = Vocabulary::new();
    for i in 0..n_atoms {
        vocab.intern(&format!("p{i}"));
    }
    let atoms: Vec<_> = vocab.atoms().collect();
    let mut idx: Vec<usize> = (0..n_atoms).collect();
    idx.shuffle(rng);
    let n_exo = rng.gen_range(0..=cfg.max_exogenous.min(n_atoms - 1));
    let exogenous: Vec<usize> = idx[..n_exo].to_vec();
    let endogenous: Vec<usize> = idx[n_exo..].to_vec();

    let n_laws = rng.gen_range(1..=cfg.max_laws.max(1));
    let mut laws = Vec::with_capacity(n_laws);
    for _ in 0..n_laws {
        let mut heads = endogenous.clone();
        heads.shuffle(rng);
        heads.truncate(rng.gen_range(1..=cfg.max_head.min(heads.len())));
        let floor = heads.iter().map(|&h| stratum(h)).min().unwrap();

        let mut pool: Vec<usize> = (0..n_atoms).filter(|&a| stratum(a) <= floor).collect();
        pool.shuffle(rng);
        let mut body = Vec::new();
        for &a in pool.iter().take(rng.gen_range(0..=cfg.max_body)) {
            let positive = stratum(a) == floor || rng.gen_bool(0.5);
            body.push(if positive { Literal::pos(atoms[a]) } else { Literal::neg(atoms[a]) });
        }
        laws.push(LawCandidate { label: None, head: random_head(rng, &heads, &vocab), body, line: None });
    }
    let exogenous = exogenous.into_iter().map(|i| atoms[i]).collect();
    validate_theory(TheoryCandidate { vocab, laws, exogenous }).expect("generated theories are valid")
}

/// A random subset of the exogenous atoms.
pub fn random_context<R: Rng>(rng: &mut R, theory: &Theory) -> Interpretation {
    theory.exogenous().iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
}
