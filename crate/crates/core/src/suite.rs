//! Property suites over a corpus of quiver files.
//!
//! Every randomized check draws from a seed derived from the suite seed, the
//! quiver file name and the trial index; failures record that seed together
//! with the inputs needed to reproduce them.

use std::fmt;
use std::fs;
use std::path::Path;

use num_traits::Zero;
use rand::RngExt;
use serde_json::{json, Value};

use crate::error::{Error, ParseErrorKind, Result};
use crate::io;
use crate::orbit::{self, OrbitSpec};
use crate::quiver::{parse_quiver, QuiverMult};
use crate::reflect::{phi, random_level_point, reflection_functor, tilde_rank};
use crate::regularize::{find_legs, regularize_params, regularize_quiver, verify_param_equivariance, verify_semidirect};
use crate::repn::{
    gauge, level_sum, moment_derivative_sides, moment_map, perpendicularity, random_group, random_lie, random_rep_with,
};
use crate::rmatrix::{pair, pr_cd, ModShape, RMap};
use crate::rng::{self, Rng};
use crate::scalars::{GaussQ, TruncScalar};
use crate::weyl::{reflect_dim, reflect_param, verify_coherence, verify_coxeter, CoxeterReport};

type T = TruncScalar<GaussQ>;
type Map = RMap<GaussQ>;

pub const SUITES: [&str; 7] = ["coxeter", "moment", "functor", "orbit", "regularize", "parser", "all"];

#[derive(Clone, PartialEq, Debug)]
pub struct Failure {
    pub check: String,
    pub seed: u64,
    pub input: Value,
}

#[derive(Clone, PartialEq, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, check: impl FnOnce() -> String, seed: u64, input: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { check: check(), seed, input: input() });
        }
    }

    fn error(&mut self, check: String, seed: u64, input: Value, e: &Error) {
        self.checks += 1;
        self.failures.push(Failure { check: format!("{check}: error[{}] {e}", e.code()), seed, input });
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    fn relations(&mut self, name: &str, r: &CoxeterReport) {
        for c in &r.checks {
            self.check(c.passed, || format!("{name}: {}", c.relation), 0, || json!({ "quiver": name }));
        }
    }

    pub fn to_json(&self) -> Value {
        let failures: Vec<Value> =
            self.failures.iter().map(|f| json!({ "check": f.check, "seed": f.seed, "input": f.input })).collect();
        json!({ "suite": self.suite, "checks": self.checks, "passed": self.passed(), "failures": failures })
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        writeln!(f, "{status} {}: {} checks, {} failures", self.suite, self.checks, self.failures.len())?;
        for fl in &self.failures {
            writeln!(f, "  {} (seed {}) {}", fl.check, fl.seed, fl.input)?;
        }
        Ok(())
    }
}

/// A parsed corpus file.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub quiver: QuiverMult,
}

fn quiver_files(dir: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "quiver") {
            let name = path.file_name().expect("file has a name").to_string_lossy().into_owned();
            out.push((name, fs::read_to_string(&path)?));
        }
    }
    out.sort();
    Ok(out)
}

/// All `*.quiver` files directly inside `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    quiver_files(dir)?
        .into_iter()
        .map(|(name, text)| {
            let quiver = parse_quiver(&text).map_err(|e| Error::Io(format!("{name}: {e}")))?;
            Ok(CorpusEntry { name, quiver })
        })
        .collect()
}

/// Texts of `dir/malformed/*.quiver`, if that directory exists.
pub fn load_malformed(dir: &Path) -> Result<Vec<(String, String)>> {
    let sub = dir.join("malformed");
    if !sub.is_dir() {
        return Ok(Vec::new());
    }
    quiver_files(&sub)
}

/// Seed for trial `k` of a check family `tag`.
pub fn trial_seed(seed: u64, tag: &str, k: u64) -> u64 {
    let h = tag.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    let mut r = rng::rng(seed ^ h);
    let base: u64 = r.random();
    base.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Runs `f` on every item on its own thread and returns the results in order.
fn par_map<I: Sync, O: Send>(items: &[I], f: impl Fn(&I) -> O + Sync) -> Vec<O> {
    std::thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|it| s.spawn(|| f(it))).collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    })
}

fn merged(name: &str, parts: Vec<SuiteReport>) -> SuiteReport {
    let mut out = SuiteReport::new(name);
    for p in parts {
        out.merge(p);
    }
    out
}

/// Coxeter relations, transpose/lift coherence and `ρ`-intertwining.
pub fn coxeter_suite(corpus: &[CorpusEntry]) -> SuiteReport {
    let mut out = SuiteReport::new("coxeter");
    for e in corpus {
        out.relations(&e.name, &verify_coxeter(&e.quiver));
        out.relations(&e.name, &verify_coherence(&e.quiver));
        out.relations(&e.name, &crate::weyl::verify_rho(&e.quiver));
    }
    out
}

/// `⟨pr_{c,d}(Z), Z′⟩_d = ⟨Z, Z′⟩_c` for random `Z`, `Z′` of rank at most 3.
pub fn adjoint_suite(seed: u64, trials: usize) -> SuiteReport {
    let mut out = SuiteReport::new("adjoint");
    for (c, d) in [(1, 2), (1, 3), (2, 4), (3, 6)] {
        for k in 0..trials {
            let s = trial_seed(seed, &format!("adjoint-{c}-{d}"), k as u64);
            let mut r = rng::rng(s);
            let shape = ModShape::new(r.random_range(1..=3), d);
            let z: Map = rng::random_map(&mut r, shape, shape, c);
            let zp: Map = rng::random_map(&mut r, shape, shape, d);
            let res = pr_cd(&z, c).and_then(|p| Ok(pair(&p, &zp, d)? == pair(&z, &zp, c)?));
            match res {
                Ok(ok) => out.check(ok, || format!("<pr_{c},{d}(Z), Z'> = <Z, Z'>"), s, || json!({ "c": c, "d": d, "rank": shape.rank })),
                Err(e) => out.error("adjointness".into(), s, json!({ "c": c, "d": d }), &e),
            }
        }
    }
    out
}

fn random_dims(r: &mut Rng, q: &QuiverMult, max: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..q.vertex_count()).map(|_| r.random_range(0..=max)).collect();
        if v.iter().any(|&x| x > 0) {
            return v;
        }
    }
}

/// Perpendicularity, gauge equivariance and the Hamiltonian identity on
/// `trials` random representations of one quiver.
pub fn moment_identities(e: &CorpusEntry, seed: u64, trials: usize) -> SuiteReport {
    let q = &e.quiver;
    let mut out = SuiteReport::new("moment");
    for k in 0..trials {
        let s = trial_seed(seed, &format!("moment-{}", e.name), k as u64);
        let mut r = rng::rng(s);
        let v = random_dims(&mut r, q, 2);
        let input = || json!({ "quiver": e.name, "v": v });
        let dims = crate::repn::dims_from_i64(&v).expect("non-negative");
        let rep = random_rep_with::<GaussQ>(q, dims.clone(), &mut r);
        let delta = random_rep_with::<GaussQ>(q, dims.clone(), &mut r);
        let xi: Vec<Map> = random_lie(q, &dims, &mut r);
        let g: Vec<Map> = random_group(q, &dims, &mut r);
        let res = (|| -> Result<(bool, bool, bool)> {
            let mu = moment_map(q, &rep)?;
            let perp = perpendicularity(&mu)?.is_zero();
            let moved = moment_map(q, &gauge(q, &rep, &g)?)?;
            let mut equi = true;
            for i in 0..q.vertex_count() {
                equi &= moved[i] == g[i].compose(&mu[i])?.compose(&g[i].inverse()?)?;
            }
            let (lhs, rhs) = moment_derivative_sides(q, &rep, &delta, &xi)?;
            Ok((perp, equi, lhs == rhs))
        })();
        match res {
            Ok((perp, equi, ham)) => {
                out.check(perp, || format!("{}: sum <tr mu_i, 1> = 0", e.name), s, input);
                out.check(equi, || format!("{}: mu(g B) = g mu(B) g^-1", e.name), s, input);
                out.check(ham, || format!("{}: <D mu(B)[delta], xi> = omega(xi*, delta)", e.name), s, input);
            }
            Err(err) => out.error(format!("{}: moment identities", e.name), s, input(), &err),
        }
    }
    out
}

/// Perpendicularity, gauge equivariance and the Hamiltonian identity, plus
/// adjointness of `pr_{c,d}`.
pub fn moment_suite(corpus: &[CorpusEntry], seed: u64, trials: usize) -> SuiteReport {
    let mut parts = par_map(corpus, |e| moment_identities(e, seed, trials));
    parts.push(adjoint_suite(seed, trials));
    merged("moment", parts)
}

fn random_lambda_unit_at(r: &mut Rng, q: &QuiverMult, i: usize) -> Vec<T> {
    let mut lam: Vec<T> = rng::random_params(r, q);
    lam[i] = rng::random_unit(r, q.mult(i));
    lam
}

fn functor_one(e: &CorpusEntry, seed: u64, trials: usize) -> SuiteReport {
    let q = &e.quiver;
    let n = q.vertex_count();
    let mut out = SuiteReport::new("functor");
    for k in 0..trials {
        let i = k % n;
        let s = trial_seed(seed, &format!("functor-{}", e.name), k as u64);
        let mut r = rng::rng(s);
        let lam = random_lambda_unit_at(&mut r, q, i);
        let v = random_dims(&mut r, q, 2);
        let input = || json!({ "quiver": e.name, "vertex": q.name(i), "v": v, "lambda": io::params_to_json(q, &lam) });
        let sv = reflect_dim(q, i, &v).expect("valid vertex");
        let rep = match random_level_point::<GaussQ>(q, &lam, &v, i, s) {
            Ok(rep) => rep,
            Err(Error::EmptyLevelSet(x)) => {
                out.check(x < 0 && x == sv[i], || format!("{}: EmptyLevelSet only when s_i(v)_i < 0", e.name), s, input);
                continue;
            }
            Err(err) => {
                out.error(format!("{}: random level point", e.name), s, input(), &err);
                continue;
            }
        };
        let res = (|| -> Result<[bool; 4]> {
            let f = reflection_functor(q, &rep, i, &lam)?;
            let lam2 = reflect_param(q, i, &lam)?;
            let mu0 = moment_map(q, &rep)?;
            let mu1 = moment_map(q, &f)?;
            let a = mu1[i] == RMap::scalar(f.dims()[i], &lam[i]);
            let mut b = true;
            for j in (0..n).filter(|&j| j != i) {
                let diff = lam2[j].sub(&lam[j])?.neg();
                b &= mu1[j].sub(&mu0[j])? == RMap::scalar(rep.dims()[j], &diff);
            }
            let c = f.dims_i64() == sv;
            let ff = reflection_functor(q, &f, i, &lam2)?;
            let d = phi(q, &ff, i)? == phi(q, &rep, i)?;
            Ok([a, b, c, d])
        })();
        match res {
            Ok([a, b, c, d]) => {
                out.check(a, || format!("{}: mu'_i(F_i B) = lambda_i Id", e.name), s, input);
                out.check(b, || format!("{}: mu'_j - mu_j = -(r_i(lambda)_j - lambda_j) Id", e.name), s, input);
                out.check(c, || format!("{}: dim V'_i = s_i(v)_i", e.name), s, input);
                out.check(d, || format!("{}: Phi_i(F_i F_i B) = Phi_i(B)", e.name), s, input);
            }
            Err(err) => out.error(format!("{}: reflection functor", e.name), s, input(), &err),
        }
    }
    for i in 0..n {
        let s = trial_seed(seed, &format!("functor-empty-{}", e.name), i as u64);
        let mut r = rng::rng(s);
        let lam = random_lambda_unit_at(&mut r, q, i);
        let mut v = random_dims(&mut r, q, 1);
        let dims = crate::repn::dims_from_i64(&v).expect("non-negative");
        v[i] = tilde_rank(q, i, &dims) as i64 + 1;
        let input = || json!({ "quiver": e.name, "vertex": q.name(i), "v": v });
        let sampled = matches!(random_level_point::<GaussQ>(q, &lam, &v, i, s), Err(Error::EmptyLevelSet(_)));
        out.check(sampled, || format!("{}: random-level raises EmptyLevelSet", e.name), s, input);
        let dims = crate::repn::dims_from_i64(&v).expect("non-negative");
        let rep = random_rep_with::<GaussQ>(q, dims, &mut r);
        let applied = matches!(reflection_functor(q, &rep, i, &lam), Err(Error::EmptyLevelSet(_)));
        out.check(applied, || format!("{}: functor raises EmptyLevelSet", e.name), s, input);
    }
    out
}

/// Reflection functor postconditions on random vertex level-set points;
/// vertex `i` cycles through the quiver with the trial index.
pub fn functor_suite(corpus: &[CorpusEntry], seed: u64, trials: usize) -> SuiteReport {
    merged("functor", par_map(corpus, |e| functor_one(e, seed, trials)))
}

/// A spec with `l + 1` blocks of total rank in `1..=4` and pairwise unit
/// differences of the `θ_k`.
pub fn random_orbit_spec(r: &mut Rng, l: usize, d: usize) -> OrbitSpec<GaussQ> {
    let dims = loop {
        let dims: Vec<usize> = (0..=l).map(|_| r.random_range(0..=2)).collect();
        let total: usize = dims.iter().sum();
        if (1..=4).contains(&total) {
            break dims;
        }
    };
    let mut consts: Vec<i64> = (-3..=3).collect();
    for k in (1..consts.len()).rev() {
        consts.swap(k, r.random_range(0..=k));
    }
    let blocks = dims
        .into_iter()
        .zip(consts)
        .map(|(w, c)| {
            let mut coeffs = vec![GaussQ::from(c)];
            coeffs.extend((1..d).map(|_| <GaussQ as rng::Sample>::sample(r)));
            (w, T::new(coeffs).expect("positive order"))
        })
        .collect();
    OrbitSpec::new(d, blocks).expect("distinct constant terms")
}

fn orbit_one(l: usize, d: usize, seed: u64, trials: usize) -> SuiteReport {
    let tag = format!("orbit-l{l}-d{d}");
    let mut out = SuiteReport::new("orbit");
    let s0 = trial_seed(seed, &tag, u64::MAX);
    let spec = random_orbit_spec(&mut rng::rng(s0), l, d);
    let spec_json = io::orbit_spec_to_json(&spec);
    let (got, want) = orbit::orbit_dimension(&spec);
    out.check(got == want, || format!("{tag}: orbit dimension {got} = {want}"), s0, || spec_json.clone());
    for k in 0..trials {
        let s = trial_seed(seed, &tag, k as u64);
        let mut r = rng::rng(s);
        let a = orbit::random_conjugate(&spec, &mut r);
        let bad = orbit::random_non_member(&spec, &mut r);
        let input = || json!({ "spec": spec_json, "a": io::rmap_to_json(&a) });
        let res = (|| -> Result<[bool; 5]> {
            let member = orbit::orbit_membership(&spec, &a)?.member;
            let b = orbit::leg_factorize(&spec, &a)?;
            let nu = b.nu(spec.theta(0))? == a;
            let level = b.leg_residuals(&spec)?.iter().all(RMap::is_zero);
            let outside = !orbit::orbit_membership(&spec, &bad)?.member;
            Ok([member, nu, level, b.ranks_ok(), outside])
        })();
        match res {
            Ok([member, nu, level, ranks, outside]) => {
                out.check(member, || format!("{tag}: g Theta g^-1 is a member"), s, input);
                out.check(nu, || format!("{tag}: nu(leg_factorize(A)) = A"), s, input);
                out.check(level, || format!("{tag}: leg moment residuals vanish"), s, input);
                out.check(ranks, || format!("{tag}: injectivity/surjectivity ranks"), s, input);
                out.check(outside, || format!("{tag}: perturbed element is not a member"), s, || {
                    json!({ "spec": spec_json, "a": io::rmap_to_json(&bad) })
                });
            }
            Err(err) => out.error(format!("{tag}: factorization"), s, input(), &err),
        }
    }
    out
}

/// Membership, factorization and non-membership on one random spec for
/// every `l ∈ {1,2,3}`, `d ∈ {1,2,3}`.
pub fn orbit_suite(seed: u64, trials: usize) -> SuiteReport {
    let shapes: Vec<(usize, usize)> = (1..=3).flat_map(|l| (1..=3).map(move |d| (l, d))).collect();
    merged("orbit", par_map(&shapes, |&(l, d)| orbit_one(l, d, seed, trials)))
}

fn regularize_one(e: &CorpusEntry, seed: u64, trials: usize) -> SuiteReport {
    let q = &e.quiver;
    let mut out = SuiteReport::new("regularize");
    for (li, leg) in find_legs(q).iter().enumerate() {
        let names = leg.names(q);
        let tag = format!("{} leg {}", e.name, names.join(","));
        let qc = match regularize_quiver(q, leg) {
            Ok(qc) => qc,
            Err(err) => {
                out.error(tag, 0, json!({ "quiver": e.name }), &err);
                continue;
            }
        };
        for rep in [verify_semidirect(q, leg), verify_param_equivariance::<GaussQ>(q, leg)] {
            match rep {
                Ok(rep) => {
                    for c in rep.checks {
                        out.check(c.passed, || format!("{tag}: {}", c.relation), 0, || json!({ "quiver": e.name, "leg": names }));
                    }
                }
                Err(err) => out.error(tag.clone(), 0, json!({ "quiver": e.name }), &err),
            }
        }
        let regular = find_legs(&qc).iter().all(|l| leg.vertices.iter().all(|v| !l.vertices.contains(v)));
        out.check(regular, || format!("{tag}: no leg through the regularized vertices"), 0, || json!({ "quiver": e.name }));
        let kept = q.arrows().iter().filter(|h| !leg.vertices.contains(&h.src) && !leg.vertices.contains(&h.dst)).all(|h| qc.arrows().contains(h));
        out.check(kept, || format!("{tag}: off-leg arrows untouched"), 0, || json!({ "quiver": e.name }));
        for k in 0..trials {
            let s = trial_seed(seed, &format!("regularize-{}-{li}", e.name), k as u64);
            let mut r = rng::rng(s);
            let mut v = random_dims(&mut r, q, 3);
            let mut along: Vec<i64> = leg.vertices.iter().map(|&i| v[i]).collect();
            along.sort_unstable_by(|a, b| b.cmp(a));
            for (p, &i) in leg.vertices.iter().enumerate() {
                v[i] = along[p];
            }
            let lam: Vec<T> = rng::random_params(&mut r, q);
            let input = || json!({ "quiver": e.name, "leg": names, "v": v, "lambda": io::params_to_json(q, &lam) });
            let res = (|| -> Result<(bool, bool)> {
                let (lc, vc) = regularize_params(q, leg, &lam, &v)?;
                let dims = q.expected_dim(&v)? == qc.expected_dim(&vc)?;
                let level = level_sum(q, &lam, &v)? == level_sum(&qc, &lc, &vc)?;
                Ok((dims, level))
            })();
            match res {
                Ok((dims, level)) => {
                    out.check(dims, || format!("{tag}: expected_dim invariant"), s, input);
                    out.check(level, || format!("{tag}: level condition invariant"), s, input);
                }
                Err(err) => out.error(format!("{tag}: parameter map"), s, input(), &err),
            }
        }
    }
    out
}

/// Lattice isometry, semidirect-product identities, parameter equivariance
/// and invariance of `expected_dim` and the level condition, for every leg.
pub fn regularize_suite(corpus: &[CorpusEntry], seed: u64, trials: usize) -> SuiteReport {
    merged("regularize", par_map(corpus, |e| regularize_one(e, seed, trials)))
}

/// Expected outcome declared on a `# expect: <code> <line>:<col>` line.
fn expectation(text: &str) -> Option<(String, String)> {
    text.lines().find_map(|l| {
        let rest = l.trim().strip_prefix("# expect:")?;
        let mut parts = rest.split_whitespace();
        Some((parts.next()?.to_string(), parts.next()?.to_string()))
    })
}

/// Round-trip stability of every corpus file and positioned rejection of
/// every malformed file.
pub fn parser_suite(corpus: &[CorpusEntry], malformed: &[(String, String)]) -> SuiteReport {
    let mut out = SuiteReport::new("parser");
    for e in corpus {
        let text = e.quiver.to_dsl();
        let again = parse_quiver(&text);
        let ok = again.as_ref().is_ok_and(|q2| *q2 == e.quiver && q2.to_dsl() == text);
        out.check(ok, || format!("{}: parse(serialize(q)) = q", e.name), 0, || json!({ "quiver": e.name }));
        let j = io::to_string(&io::quiver_to_json(&e.quiver));
        let back = io::parse_json(&j).and_then(|v| io::quiver_from_json(&v));
        out.check(back.is_ok_and(|q2| q2 == e.quiver), || format!("{}: JSON round-trip", e.name), 0, || json!({ "quiver": e.name }));
    }
    for (name, text) in malformed {
        let input = || json!({ "file": name });
        match parse_quiver(text) {
            Ok(_) => out.check(false, || format!("{name}: rejected"), 0, input),
            Err(err @ Error::Parse { .. }) => {
                let Error::Parse { pos, ref kind } = err else { unreachable!() };
                let positioned = pos.line >= 1 && pos.col >= 1;
                let matches = match expectation(text) {
                    Some((code, at)) => code == err.code() && at == pos.to_string(),
                    None => true,
                };
                let detail = match kind {
                    ParseErrorKind::Syntax(m) => m.clone(),
                    other => other.to_string(),
                };
                out.check(positioned && matches, || format!("{name}: rejected at {pos} with {} ({detail})", err.code()), 0, input);
            }
            Err(other) => out.error(format!("{name}: unpositioned rejection"), 0, input(), &other),
        }
    }
    out
}

/// Runs a named suite over the corpus directory.
pub fn run_suite(name: &str, dir: &Path, seed: u64, trials: usize) -> Result<SuiteReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let corpus = load_corpus(dir)?;
    let one = |n: &str| -> Result<SuiteReport> {
        Ok(match n {
            "coxeter" => coxeter_suite(&corpus),
            "moment" => moment_suite(&corpus, seed, trials),
            "functor" => functor_suite(&corpus, seed, trials),
            "orbit" => orbit_suite(seed, trials),
            "regularize" => regularize_suite(&corpus, seed, trials),
            "parser" => parser_suite(&corpus, &load_malformed(dir)?),
            _ => unreachable!("checked above"),
        })
    };
    if name == "all" {
        let parts = SUITES[..SUITES.len() - 1].iter().map(|n| one(n)).collect::<Result<Vec<_>>>()?;
        let mut out = SuiteReport::new("all");
        for p in parts {
            out.merge(p);
        }
        Ok(out)
    } else {
        one(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str, src: &str) -> CorpusEntry {
        CorpusEntry { name: name.into(), quiver: parse_quiver(src).unwrap() }
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(trial_seed(1, "x", 0), trial_seed(1, "x", 0));
        assert_ne!(trial_seed(1, "x", 0), trial_seed(1, "x", 1));
        assert_ne!(trial_seed(1, "x", 0), trial_seed(1, "y", 0));
        assert_ne!(trial_seed(1, "x", 0), trial_seed(2, "x", 0));
    }

    #[test]
    fn small_suites_pass() {
        let corpus = vec![
            entry("b2.quiver", "quiver { vertex a mult 1 vertex b mult 2 arrow x : b -> a }"),
            entry("a2.quiver", "quiver { vertex a mult 1 vertex b mult 1 arrow x : a -> b }"),
        ];
        for rep in [
            coxeter_suite(&corpus),
            moment_suite(&corpus, 3, 3),
            functor_suite(&corpus, 3, 4),
            regularize_suite(&corpus, 3, 3),
            orbit_one(2, 2, 3, 3),
        ] {
            assert!(rep.passed(), "{rep}");
            assert!(rep.checks > 0);
        }
        assert_eq!(moment_suite(&corpus, 3, 2), moment_suite(&corpus, 3, 2));
    }

    #[test]
    fn parser_expectations() {
        let bad = vec![
            ("loop.quiver".to_string(), "# expect: edge_loop_forbidden 2:32\nquiver { vertex a mult 1 arrow x : a -> a }".to_string()),
            ("wrong.quiver".to_string(), "# expect: syntax_error 9:9\nquiver { }}".to_string()),
        ];
        let rep = parser_suite(&[], &bad);
        assert_eq!(rep.checks, 2);
        assert_eq!(rep.failures.len(), 1, "{rep}");
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", Path::new("."), 1, 1), Err(Error::UnknownSuite(_))));
    }
}
