//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its own line; exits non-zero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;

use qscheme::quiver::QuiverMult;
use qscheme::regularize::{find_legs, verify_semidirect};
use qscheme::suite::{
    adjoint_suite, functor_suite, load_corpus, load_malformed, moment_identities, orbit_suite, parser_suite,
    regularize_suite, CorpusEntry, SuiteReport,
};
use qscheme::weyl::{verify_coherence, verify_coxeter, verify_rho, CoxeterReport};

const SEED: u64 = 1;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

struct Outcome {
    passed: bool,
    detail: String,
}

impl From<SuiteReport> for Outcome {
    fn from(r: SuiteReport) -> Self {
        let mut detail = format!("{} checks, {} failures", r.checks, r.failures.len());
        for f in r.failures.iter().take(5) {
            detail += &format!("\n    {} (seed {}) {}", f.check, f.seed, f.input);
        }
        Outcome { passed: r.passed() && r.checks > 0, detail }
    }
}

fn relations(corpus: &[CorpusEntry], verify: fn(&QuiverMult) -> CoxeterReport) -> Outcome {
    let mut checks = 0;
    let mut failed = Vec::new();
    for e in corpus {
        let r = verify(&e.quiver);
        checks += r.checks.len();
        failed.extend(r.failures().map(|c| format!("{}: {}", e.name, c.relation)));
    }
    let mut detail = format!("{} quivers, {checks} relations, {} failures", corpus.len(), failed.len());
    for f in failed.iter().take(5) {
        detail += &format!("\n    {f}");
    }
    Outcome { passed: failed.is_empty() && checks > 0, detail }
}

fn pick(corpus: &[CorpusEntry], names: &[&str]) -> Vec<CorpusEntry> {
    names
        .iter()
        .map(|n| {
            let file = format!("{n}.quiver");
            corpus.iter().find(|e| e.name == file).unwrap_or_else(|| panic!("corpus lacks {file}")).clone()
        })
        .collect()
}

fn coxeter(corpus: &[CorpusEntry]) -> Outcome {
    let named = ["example_i_d2", "example_i_d3", "example_ii_d2", "example_ii_d3"];
    let examples = pick(corpus, &named);
    let extra: Vec<CorpusEntry> =
        corpus.iter().filter(|e| !named.iter().any(|n| e.name == format!("{n}.quiver"))).cloned().collect();
    let mut all = examples;
    all.extend_from_slice(&extra);
    let mut out = relations(&all, verify_coxeter);
    out.passed &= extra.len() >= 3;
    out
}

fn moment(corpus: &[CorpusEntry]) -> Outcome {
    let four = pick(corpus, &["example_i_d2", "example_ii_d3", "star_n3_d3", "g2"]);
    let mut total = SuiteReport { suite: "moment".into(), checks: 0, failures: Vec::new() };
    for e in &four {
        let r = moment_identities(e, SEED, 13);
        total.checks += r.checks;
        total.failures.extend(r.failures);
    }
    total.into()
}

fn regularization(corpus: &[CorpusEntry]) -> Outcome {
    let examples = pick(
        corpus,
        &["star_n2_d4", "star_n3_d2", "star_n3_d3", "star_n4_d4", "double_leg_n4_d2", "double_leg_n5_d3", "double_leg_n4_d4"],
    );
    let mut isometry = true;
    for e in &examples {
        let legs = find_legs(&e.quiver);
        isometry &= !legs.is_empty();
        for leg in legs {
            let r = verify_semidirect(&e.quiver, &leg).expect("leg of a corpus quiver");
            isometry &= r.checks.iter().any(|c| c.relation.contains("D' C' phi = D C") && c.passed);
        }
    }
    let mut out: Outcome = regularize_suite(corpus, SEED, 50).into();
    out.passed &= isometry;
    out
}

fn parser(corpus: &[CorpusEntry]) -> Outcome {
    let malformed = load_malformed(&corpus_dir()).expect("malformed corpus");
    let covers = ["edge_loop_forbidden", "duplicate_name", "unknown_vertex", "syntax_error"]
        .iter()
        .all(|code| malformed.iter().any(|(_, text)| text.contains(&format!("# expect: {code} "))));
    let mut out: Outcome = parser_suite(corpus, &malformed).into();
    out.passed &= covers && !malformed.is_empty();
    out.detail += &format!(" ({} malformed files)", malformed.len());
    out
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let corpus = load_corpus(&corpus_dir()).expect("corpus loads");
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 Coxeter relations for r_i and s_i", Box::new(|| coxeter(&corpus))),
        ("2 transpose/lift coherence", Box::new(|| relations(&corpus, verify_coherence))),
        ("3 rho-intertwining", Box::new(|| relations(&corpus, verify_rho))),
        ("4 adjointness of pr_{c,d}", Box::new(|| adjoint_suite(SEED, 50).into())),
        ("5 moment map identities", Box::new(|| moment(&corpus))),
        ("6 reflection functor", Box::new(|| functor_suite(&corpus, SEED, 25).into())),
        ("7 coadjoint orbit factorization", Box::new(|| orbit_suite(SEED, 100).into())),
        ("8 regularization", Box::new(|| regularization(&corpus))),
        ("9 parser round-trip and rejection", Box::new(|| parser(&corpus))),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        if !o.passed {
            failed += 1;
        }
        println!("{} criterion {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
