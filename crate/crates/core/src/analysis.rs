//! Verification engine: degree statistics, the exact `A^2` identity of
//! polarity graphs, dense spectra, exact maximum cliques and sampled
//! expander-mixing checks, aggregated into a [`VerificationReport`].

use std::time::Instant;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construction::{build_h, nonabsolute_subgraph, verify_transitivity, ConstructionParams};
use crate::field::Field;
use crate::graph::{bits, Construction, Graph};
use crate::polarity::{polarity_graph, BilinearForm, FormKind};
use crate::projgeom::{point_count, PointIndex};
use crate::{Error, Result};

/// Default cap on the vertex count for dense eigensolves.
pub const DEFAULT_SPECTRUM_CAP: usize = 2500;

/// Absolute tolerance for eigenvalue comparisons against exact bounds.
pub const SPECTRAL_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub regular: bool,
    pub loop_count: usize,
}

/// Degree statistics; a loop adds one to its vertex's degree.
pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let min = g.degrees().min().unwrap_or(0);
    let max = g.degrees().max().unwrap_or(0);
    DegreeProfile {
        min,
        max,
        regular: min == max,
        loop_count: g.loop_count(),
    }
}

/// Checks `A^2 = q^(k-2) I + (q^(k-2) - 1)/(q - 1) J` entrywise in exact
/// integers, with loops as diagonal ones. `g` must be a full polarity graph
/// of PG(k-1, q).
pub fn adjacency_square_check(g: &Graph, k: usize, q: u32) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k = {k}, need k >= 2")));
    }
    let n = g.n();
    let expected_n = point_count(k, q as u64) as usize;
    if n != expected_n {
        return Err(Error::NotFullPolarityGraph {
            expected: expected_n,
            got: n,
        });
    }
    let diag_extra = (q as u64).pow(k as u32 - 2);
    let off = point_count(k - 2, q as u64);
    let words = g.words_per_row();
    // rows with the loop bit set
    let mut rows = Vec::with_capacity(n * words);
    for v in 0..n {
        rows.extend_from_slice(g.row(v));
        if g.has_loop(v) {
            rows[v * words + v / 64] |= 1 << (v % 64);
        }
    }
    let row = |v: usize| &rows[v * words..(v + 1) * words];
    let ok = (0..n).into_par_iter().all(|i| {
        let ri = row(i);
        (i..n).all(|j| {
            let common: u64 = ri
                .iter()
                .zip(row(j))
                .map(|(a, b)| (a & b).count_ones() as u64)
                .sum();
            let expect = if i == j { diag_extra + off } else { off };
            common == expect
        })
    });
    Ok(ok)
}

/// Eigenvalues of the adjacency matrix (loops on the diagonal), descending.
pub fn spectrum(g: &Graph, cap: usize) -> Result<Vec<f64>> {
    let n = g.n();
    if n > cap {
        return Err(Error::SpectrumCapExceeded { n, cap });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let a = g.adjacency_matrix();
    let m = DMatrix::from_fn(n, n, |i, j| a[i * n + j] as f64);
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    Ok(ev)
}

/// Largest absolute value among all eigenvalues but the top one.
pub fn second_abs(eigenvalues: &[f64]) -> f64 {
    eigenvalues
        .iter()
        .skip(1)
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
}

/// Eigenvalues grouped into `(value, multiplicity)` pairs, merging values
/// within `tol`, in descending order.
pub fn group_eigenvalues(eigenvalues: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &x in eigenvalues {
        match out.last_mut() {
            Some((v, m)) if (*v - x).abs() <= tol => *m += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clique {
    pub size: usize,
    /// Sorted vertex ids of one maximum clique.
    pub witness: Vec<usize>,
}

/// Exact maximum clique; loops are ignored.
///
/// Branch and bound over a degeneracy ordering: each vertex is expanded with
/// its later neighbours as candidates, nodes are pruned by a greedy
/// colouring bound and branching is restricted to non-neighbours of a pivot.
/// The search is sequential and ties are broken by vertex id, so the witness
/// is deterministic.
pub fn max_clique(g: &Graph) -> Clique {
    let n = g.n();
    if n == 0 {
        return Clique {
            size: 0,
            witness: Vec::new(),
        };
    }
    let words = g.words_per_row();
    let order = degeneracy_order(g);
    let mut search = CliqueSearch {
        g,
        words,
        best: vec![order[0]],
        current: Vec::new(),
    };
    let mut later = vec![!0u64; words];
    trim(&mut later, n);
    for &v in &order {
        later[v / 64] &= !(1 << (v % 64));
        let cand: Vec<u64> = later.iter().zip(g.row(v)).map(|(a, b)| a & b).collect();
        if popcount(&cand) < search.best.len() {
            continue;
        }
        search.current.push(v);
        search.expand(cand);
        search.current.pop();
    }
    let mut witness = search.best;
    witness.sort_unstable();
    Clique {
        size: witness.len(),
        witness,
    }
}

fn trim(set: &mut [u64], n: usize) {
    if !n.is_multiple_of(64) {
        if let Some(last) = set.last_mut() {
            *last &= (1u64 << (n % 64)) - 1;
        }
    }
}

fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

/// Repeatedly removes a vertex of minimum remaining degree (smallest id on
/// ties).
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.neighbors(v).count()).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

struct CliqueSearch<'a> {
    g: &'a Graph,
    words: usize,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut cand: Vec<u64>) {
        let size = popcount(&cand);
        if size == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + self.colour_bound(&cand) <= self.best.len() {
            return;
        }
        let pivot = bits(&cand)
            .max_by_key(|&u| {
                let inside: usize = self
                    .g
                    .row(u)
                    .iter()
                    .zip(&cand)
                    .map(|(a, b)| (a & b).count_ones() as usize)
                    .sum();
                (inside, std::cmp::Reverse(u))
            })
            .expect("candidate set is nonempty");
        let branch: Vec<usize> = bits(&cand)
            .filter(|&v| !self.g.adjacent(pivot, v))
            .collect();
        for v in branch {
            if self.current.len() + popcount(&cand) <= self.best.len() {
                return;
            }
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
            self.current.push(v);
            self.expand(next);
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }

    /// Number of colours in a greedy sequential colouring of `cand`.
    fn colour_bound(&self, cand: &[u64]) -> usize {
        let mut uncoloured = cand.to_vec();
        let mut colours = 0;
        let mut avail = vec![0u64; self.words];
        while uncoloured.iter().any(|&w| w != 0) {
            colours += 1;
            avail.copy_from_slice(&uncoloured);
            while let Some(v) = first_bit(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (a, r) in avail.iter_mut().zip(self.g.row(v)) {
                    *a &= !r;
                }
            }
        }
        colours
    }
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// `e(S, T)`: ordered pairs `(u, v)` in `S x T` with `u`, `v` adjacent and
/// distinct.
pub fn edge_count_between(g: &Graph, s: &[usize], t: &[usize]) -> usize {
    let mut tset = vec![0u64; g.words_per_row()];
    for &v in t {
        tset[v / 64] |= 1 << (v % 64);
    }
    s.iter()
        .map(|&u| {
            g.row(u)
                .iter()
                .zip(&tset)
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum::<usize>()
        })
        .sum()
}

/// `|e(S,T) - d|S||T|/n| / (lambda sqrt(|S||T|))`, or 0 when either set is
/// empty.
pub fn mixing_ratio(g: &Graph, d: usize, lambda: f64, s: &[usize], t: &[usize]) -> f64 {
    let (a, b) = (s.len() as f64, t.len() as f64);
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    let e = edge_count_between(g, s, t) as f64;
    let deviation = (e - d as f64 * a * b / g.n() as f64).abs();
    deviation / (lambda * (a * b).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingResult {
    pub trials: usize,
    pub seed: u64,
    pub lambda: f64,
    pub max_violation_ratio: f64,
    pub pass: bool,
}

/// Samples `trials` disjoint pairs `(S, T)` from a ChaCha8 stream seeded
/// with `seed` and records the worst mixing ratio.
pub fn mixing_check(g: &Graph, lambda: f64, trials: usize, seed: u64) -> Result<MixingResult> {
    let profile = degree_profile(g);
    if !profile.regular {
        return Err(Error::NotRegular {
            min: profile.min,
            max: profile.max,
        });
    }
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut worst = 0.0f64;
    if n >= 2 {
        for _ in 0..trials {
            perm.shuffle(&mut rng);
            let s_len = rng.gen_range(1..n);
            let t_len = rng.gen_range(1..=n - s_len);
            let (s, rest) = perm.split_at(s_len);
            let ratio = mixing_ratio(g, profile.max, lambda, s, &rest[..t_len]);
            worst = worst.max(ratio);
        }
    }
    Ok(MixingResult {
        trials,
        seed,
        lambda,
        max_violation_ratio: worst,
        pass: worst <= 1.0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Structure,
    Spectrum,
    Clique,
    Transitivity,
    Mixing,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Structure,
        Suite::Spectrum,
        Suite::Clique,
        Suite::Transitivity,
        Suite::Mixing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Spectrum => "spectrum",
            Suite::Clique => "clique",
            Suite::Transitivity => "transitivity",
            Suite::Mixing => "mixing",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// What to build and which checks to run.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub k: usize,
    pub q: u32,
    pub t0: Option<u16>,
    pub form: FormKind,
    pub construction: Construction,
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub trials: usize,
    pub spectrum_cap: usize,
}

impl VerifyConfig {
    pub fn paper(k: usize, q: u32) -> Self {
        VerifyConfig {
            k,
            q,
            t0: None,
            form: FormKind::PseudoSymplectic,
            construction: Construction::Paper,
            suites: Suite::ALL.to_vec(),
            seed: 42,
            trials: 500,
            spectrum_cap: DEFAULT_SPECTRUM_CAP,
        }
    }
}

/// Builds the graph described by `config`, together with the pseudo-symplectic
/// construction parameters when applicable.
pub fn build_graph(config: &VerifyConfig) -> Result<(Graph, Option<ConstructionParams>)> {
    let field = Field::with_order(config.q)?;
    match config.construction {
        Construction::Paper => {
            if config.form != FormKind::PseudoSymplectic {
                return Err(Error::InvalidParameter(
                    "the trace-one construction uses the pseudo-symplectic form".into(),
                ));
            }
            let t0 = config
                .t0
                .map(|t| field.element(t as u32))
                .transpose()?;
            let params = ConstructionParams::new(config.k, field, t0)?;
            Ok((build_h(&params)?, Some(params)))
        }
        Construction::Nonabsolute => {
            let form = BilinearForm::standard(config.form, config.k, &field)?;
            Ok((nonabsolute_subgraph(&form)?, None))
        }
        Construction::Full => {
            let form = BilinearForm::standard(config.form, config.k, &field)?;
            Ok((polarity_graph(&form), None))
        }
        Construction::Other => Err(Error::InvalidParameter(
            "construction must be paper, nonabsolute or full".into(),
        )),
    }
}

/// Flat record of every measured quantity and the verdicts derived from it.
/// Fields belonging to suites that were not run are `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub k: usize,
    pub q: u32,
    pub form: FormKind,
    pub construction: Construction,
    pub t0: Option<u16>,
    pub suites: Vec<Suite>,

    pub n: usize,
    pub edge_count: usize,
    pub d_min: usize,
    pub d_max: usize,
    pub regular: bool,
    pub loop_count: usize,
    pub expected_n: Option<u64>,
    pub expected_d: Option<u64>,
    pub host_n: u64,
    pub a2_identity_pass: Option<bool>,
    pub density_ratio: Option<f64>,
    pub density_pass: Option<bool>,
    pub alpha_density: Option<f64>,
    pub structure_pass: Option<bool>,

    pub spectrum_top: Option<f64>,
    pub spectrum_second_abs: Option<f64>,
    pub spectral_bound: f64,
    /// `q^((k-1)/2)`; recorded for comparison only, never asserted.
    pub spectral_bound_half_k_minus_1: f64,
    pub spectrum_trace_pass: Option<bool>,
    /// Full polarity graphs only: every non-principal eigenvalue squares to
    /// `q^(k-2)`.
    pub spectrum_pm_pass: Option<bool>,
    pub spectral_pass: Option<bool>,

    pub clique_number: Option<usize>,
    pub clique_witness: Option<Vec<usize>>,
    pub clique_bound: Option<usize>,
    pub kfree_pass: Option<bool>,

    pub transitivity_orbit_size: Option<usize>,
    pub transitivity_expected_size: Option<usize>,
    pub transitivity_pass: Option<bool>,

    pub mixing_lambda: Option<f64>,
    pub mixing_trials: Option<usize>,
    pub mixing_seed: Option<u64>,
    pub mixing_max_violation_ratio: Option<f64>,
    pub mixing_pass: Option<bool>,

    pub all_pass: bool,
    pub notes: Vec<String>,

    pub time_build_ms: f64,
    pub time_structure_ms: Option<f64>,
    pub time_spectrum_ms: Option<f64>,
    pub time_clique_ms: Option<f64>,
    pub time_transitivity_ms: Option<f64>,
    pub time_mixing_ms: Option<f64>,
}

impl VerificationReport {
    /// Every `*_pass` verdict that was evaluated.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        [
            ("structure", self.structure_pass),
            ("a2_identity", self.a2_identity_pass),
            ("density", self.density_pass),
            ("spectrum_trace", self.spectrum_trace_pass),
            ("spectrum_pm", self.spectrum_pm_pass),
            ("spectral", self.spectral_pass),
            ("kfree", self.kfree_pass),
            ("transitivity", self.transitivity_pass),
            ("mixing", self.mixing_pass),
        ]
        .into_iter()
        .filter_map(|(name, v)| v.map(|v| (name, v)))
        .collect()
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs the requested suites and fills the report.
pub fn verify_all(config: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let (g, params) = build_graph(config)?;
    let time_build_ms = elapsed_ms(start);
    let k = config.k;
    let q = config.q;
    let qf = q as f64;
    let wants = |s: Suite| config.suites.contains(&s);
    let profile = degree_profile(&g);
    let host_n = point_count(k, q as u64);

    let mut r = VerificationReport {
        k,
        q,
        form: config.form,
        construction: config.construction,
        t0: params.as_ref().map(|p| p.t0().encoding()),
        suites: config.suites.clone(),
        n: g.n(),
        edge_count: g.edge_count(),
        d_min: profile.min,
        d_max: profile.max,
        regular: profile.regular,
        loop_count: profile.loop_count,
        expected_n: None,
        expected_d: None,
        host_n,
        a2_identity_pass: None,
        density_ratio: None,
        density_pass: None,
        alpha_density: None,
        structure_pass: None,
        spectrum_top: None,
        spectrum_second_abs: None,
        spectral_bound: qf.powf((k as f64 - 2.0) / 2.0),
        spectral_bound_half_k_minus_1: qf.powf((k as f64 - 1.0) / 2.0),
        spectrum_trace_pass: None,
        spectrum_pm_pass: None,
        spectral_pass: None,
        clique_number: None,
        clique_witness: None,
        clique_bound: None,
        kfree_pass: None,
        transitivity_orbit_size: None,
        transitivity_expected_size: None,
        transitivity_pass: None,
        mixing_lambda: None,
        mixing_trials: None,
        mixing_seed: None,
        mixing_max_violation_ratio: None,
        mixing_pass: None,
        all_pass: true,
        notes: Vec::new(),
        time_build_ms,
        time_structure_ms: None,
        time_spectrum_ms: None,
        time_clique_ms: None,
        time_transitivity_ms: None,
        time_mixing_ms: None,
    };

    if wants(Suite::Structure) {
        let t = Instant::now();
        structure_suite(config, &g, params.as_ref(), &mut r)?;
        r.time_structure_ms = Some(elapsed_ms(t));
    }

    if wants(Suite::Spectrum) {
        let t = Instant::now();
        spectrum_suite(config, &g, &mut r)?;
        r.time_spectrum_ms = Some(elapsed_ms(t));
    }

    if wants(Suite::Clique) {
        let t = Instant::now();
        let c = max_clique(&g);
        r.clique_bound = match config.construction {
            Construction::Paper => Some(k - 1),
            Construction::Nonabsolute => Some(k),
            _ => None,
        };
        r.kfree_pass = r.clique_bound.map(|b| c.size <= b);
        r.clique_number = Some(c.size);
        r.clique_witness = Some(c.witness);
        r.time_clique_ms = Some(elapsed_ms(t));
    }

    if wants(Suite::Transitivity) {
        match params.as_ref() {
            Some(p) if k >= 3 => {
                let t = Instant::now();
                let tr = verify_transitivity(p, None)?;
                r.transitivity_orbit_size = Some(tr.orbit_size);
                r.transitivity_expected_size = Some(tr.expected_size);
                r.transitivity_pass = Some(tr.pass);
                r.time_transitivity_ms = Some(elapsed_ms(t));
            }
            _ => r
                .notes
                .push("transitivity: only defined for the trace-one construction with k >= 3".into()),
        }
    }

    if wants(Suite::Mixing) {
        if profile.regular {
            let t = Instant::now();
            let m = mixing_check(&g, r.spectral_bound, config.trials, config.seed)?;
            r.mixing_lambda = Some(m.lambda);
            r.mixing_trials = Some(m.trials);
            r.mixing_seed = Some(m.seed);
            r.mixing_max_violation_ratio = Some(m.max_violation_ratio);
            r.mixing_pass = Some(m.pass);
            r.time_mixing_ms = Some(elapsed_ms(t));
        } else {
            r.notes
                .push("mixing: skipped, the graph is not regular".into());
        }
    }

    r.all_pass = r.verdicts().iter().all(|&(_, ok)| ok);
    Ok(r)
}

fn structure_suite(
    config: &VerifyConfig,
    g: &Graph,
    params: Option<&ConstructionParams>,
    r: &mut VerificationReport,
) -> Result<()> {
    let k = config.k;
    let q = config.q as u64;
    let field = Field::with_order(config.q)?;
    let host_form = BilinearForm::standard(config.form, k, &field)?;
    let host = polarity_graph(&host_form);
    r.a2_identity_pass = Some(adjacency_square_check(&host, k, config.q)?);

    // g must be the subgraph of the host induced on its labels
    let index = PointIndex::new(&field, host.labels());
    let ids: Option<Vec<usize>> = g.labels().iter().map(|x| index.id(x)).collect();
    let induced = g.labels().len() == g.n()
        && ids.is_some_and(|ids| host.induced(&ids) == *g);

    let mut ok = r.a2_identity_pass == Some(true) && induced;
    if !induced {
        r.notes
            .push("structure: graph is not the induced subgraph of its host on its labels".into());
    }
    match config.construction {
        Construction::Paper => {
            let p = params.expect("paper construction has parameters");
            r.expected_n = Some(p.expected_order());
            r.expected_d = Some(p.expected_degree());
            ok &= r.n as u64 == p.expected_order()
                && r.regular
                && r.d_max as u64 == p.expected_degree()
                && r.loop_count == 0;
        }
        Construction::Full => {
            r.expected_n = Some(point_count(k, q));
            r.expected_d = Some(point_count(k - 1, q));
            ok &= r.n as u64 == point_count(k, q)
                && r.regular
                && r.d_max as u64 == point_count(k - 1, q);
        }
        Construction::Nonabsolute => {
            let absolute = host.loop_count() as u64;
            r.expected_n = Some(point_count(k, q) - absolute);
            ok &= r.n as u64 == point_count(k, q) - absolute && r.loop_count == 0;
            if !r.regular {
                r.notes.push(format!(
                    "structure: non-absolute subgraph is not regular (degrees {}..={})",
                    r.d_min, r.d_max
                ));
            }
        }
        Construction::Other => {}
    }

    if r.n > 0 {
        r.alpha_density = Some(r.n as f64 / r.host_n as f64);
    }
    if k >= 3 && r.regular && r.n > 0 && config.construction != Construction::Full {
        let ratio = density_ratio(r.n, r.d_max, k);
        r.density_ratio = Some(ratio);
        r.density_pass = Some((0.5..=1.5).contains(&ratio));
    }
    r.structure_pass = Some(ok);
    Ok(())
}

/// `(d/n) * n^(1/(k-1))`.
pub fn density_ratio(n: usize, d: usize, k: usize) -> f64 {
    (d as f64 / n as f64) * (n as f64).powf(1.0 / (k as f64 - 1.0))
}

fn spectrum_suite(config: &VerifyConfig, g: &Graph, r: &mut VerificationReport) -> Result<()> {
    if g.n() == 0 {
        r.notes.push("spectrum: empty graph".into());
        return Ok(());
    }
    let ev = match spectrum(g, config.spectrum_cap) {
        Ok(ev) => ev,
        Err(Error::SpectrumCapExceeded { n, cap }) => {
            r.notes
                .push(format!("spectrum: skipped, n = {n} exceeds the cap of {cap}"));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let sum: f64 = ev.iter().sum();
    let sum_sq: f64 = ev.iter().map(|x| x * x).sum();
    let trace_sq = (2 * g.edge_count() + g.loop_count()) as f64;
    r.spectrum_trace_pass = Some(
        (sum - g.loop_count() as f64).abs() <= SPECTRAL_TOL * g.n() as f64
            && (sum_sq - trace_sq).abs() <= SPECTRAL_TOL * g.n() as f64,
    );
    r.spectrum_top = Some(ev[0]);
    let second = second_abs(&ev);
    r.spectrum_second_abs = Some(second);
    r.spectral_pass = Some(second <= r.spectral_bound + SPECTRAL_TOL);
    if config.construction == Construction::Full {
        let target = (config.q as f64).powi(config.k as i32 - 2);
        r.spectrum_pm_pass = Some(ev[1..].iter().all(|x| (x * x - target).abs() <= SPECTRAL_TOL));
        r.notes.push(format!(
            "spectrum: non-principal eigenvalues of the polarity graph are +/-q^((k-2)/2) = +/-{:.6}, \
             as forced by A^2 = q^(k-2) I + c J; the larger value q^((k-1)/2) = {:.6} is not asserted",
            r.spectral_bound, r.spectral_bound_half_k_minus_1
        ));
    }
    Ok(())
}

/// Comparison key for t0-invariance: `(n, d, clique number, spectrum)`.
pub fn invariant_tuple(g: &Graph, cap: usize) -> Result<(usize, usize, usize, Vec<f64>)> {
    let p = degree_profile(g);
    Ok((g.n(), p.max, max_clique(g).size, spectrum(g, cap)?))
}
