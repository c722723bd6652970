//! The acceptance checks behind `verify-paper`. Each check carries the
//! quoted phrase it reproduces, a runtime budget, and returns what it
//! measured next to what was expected.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use nslen_core::group::{
    hadamard_perm_group, parse_group_spec, sym, AutCoset, OuterSpec, PermGroup, Permutation,
    SimpleGroup, SimpleSpec, SymGroup, WreathElement, WreathProduct,
};
use nslen_core::permstat::{
    bound_corpus, check_support_theorem, f_bound_parts, factorial, markov_chebyshev_report,
    moments, orbit_count, rank, SupportStats,
};
use nslen_core::structure::{
    check_lambda_exponent_bound, enumerate, nonsolvable_length, transfer_check_power, Engine,
    LambdaBoundVerdict, LambdaOptions,
};
use nslen_core::word::bell_number;
use nslen_core::wordmap::{
    coordinate_decomposition, coset_exponent, coset_value_set, evaluate, fiber_distribution,
    is_coset_identity, wmb_refute,
};
use nslen_core::{parse_word, Error, Exec, Letter, Sign, Variable, Word};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::rat;

const BUDGET: u64 = 1 << 34;

pub struct Ctx {
    pub exec: Exec,
    pub seed: u64,
}

pub struct Measured {
    pub measured: Value,
    pub expected: Value,
    pub pass: bool,
}

pub struct Check {
    pub id: &'static str,
    pub anchor: &'static str,
    pub budget: Duration,
    /// Only run with `--slow`.
    pub slow: bool,
    pub run: fn(&Ctx) -> Result<Measured, Error>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: &'static str,
    pub anchor: &'static str,
    pub status: &'static str,
    pub measured: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_s: Option<f64>,
    pub budget_s: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "cf-moments",
            anchor: "The Lemma that is not Burnside's",
            budget: secs(60),
            slow: false,
            run: cf_moments,
        },
        Check {
            id: "support-bounds",
            anchor: "$|P| \\le c!$, $\\supp(P) \\le 2(c-1)$",
            budget: secs(60),
            slow: false,
            run: support_bounds,
        },
        Check {
            id: "small-support-order-bound",
            anchor: "one may choose $f$ to be",
            budget: secs(120),
            slow: false,
            run: small_support_order_bound,
        },
        Check {
            id: "moment-tail-bounds",
            anchor: "$|P| \\le \\lfloor t\\rho^{-1}+C \\rfloor !$, $\\lfloor \\sqrt{r-t^2}\\rho^{-1} + t + C \\rfloor !$",
            budget: secs(120),
            slow: false,
            run: moment_tail_bounds,
        },
        Check {
            id: "subdirect-rank",
            anchor: "$r(P_m)\\geq 2t(P_m)^2$",
            budget: secs(60),
            slow: false,
            run: subdirect_rank,
        },
        Check {
            id: "coset-exponent",
            anchor: "Then $\\exp(S\\alpha)=4f$",
            budget: secs(120),
            slow: false,
            run: coset_exponent_small,
        },
        Check {
            id: "coset-exponent-slow",
            anchor: "also true for $f\\in\\{2,4\\}$",
            budget: secs(1800),
            slow: true,
            run: coset_exponent_81,
        },
        Check {
            id: "power-coset-identity",
            anchor: "$e=4f$ for some odd $f$",
            budget: secs(120),
            slow: false,
            run: power_coset_identity,
        },
        Check {
            id: "constant-coset-values",
            anchor: "$w(S\\alpha_1,\\ldots,S\\alpha_d)\\not=\\{1\\}$",
            budget: secs(300),
            slow: false,
            run: constant_coset_values,
        },
        Check {
            id: "nonsolvable-length",
            anchor: "characteristic sections",
            budget: secs(300),
            slow: false,
            run: nonsolvable_length_values,
        },
        Check {
            id: "lambda-exponent-bound",
            anchor: "$\\lambda(G)\\leq\\nu_2(\\exp(G))$",
            budget: secs(120),
            slow: false,
            run: lambda_exponent_bound,
        },
        Check {
            id: "power-transfer",
            anchor: "$P(H)$ satisfies the identity $x^{e/2}\\equiv1$",
            budget: secs(300),
            slow: false,
            run: power_transfer,
        },
        Check {
            id: "coordinate-decomposition",
            anchor: "this equation can be rewritten into the conjunction",
            budget: secs(300),
            slow: false,
            run: coordinate_decomposition_trials,
        },
        Check {
            id: "word-calculus",
            anchor: "The words $\\Delta_{i,j}(w)$ are segments of $w$",
            budget: secs(10),
            slow: false,
            run: word_calculus,
        },
        Check {
            id: "fiber-exactness",
            anchor: "the proportion in $G^d$ of the fiber of $g$ under $w_G$",
            budget: secs(30),
            slow: false,
            run: fiber_exactness,
        },
        Check {
            id: "parallel-determinism",
            anchor: "identical reports at 1, 2 and 8 workers",
            budget: secs(720),
            slow: false,
            run: parallel_determinism,
        },
    ]
}

/// Checks whose id or anchor contains one of the comma-separated terms
/// (case-insensitive); slow checks only with `slow`.
pub fn select(filter: Option<&str>, slow: bool) -> Vec<Check> {
    let terms: Vec<String> = filter
        .map(|f| {
            f.split(',')
                .map(|t| t.trim().to_lowercase())
                .filter(|t| !t.is_empty())
                .collect()
        })
        .unwrap_or_default();
    checks()
        .into_iter()
        .filter(|c| slow || !c.slow)
        .filter(|c| {
            terms.is_empty()
                || terms.iter().any(|t| {
                    c.id.contains(t.as_str()) || c.anchor.to_lowercase().contains(t.as_str())
                })
        })
        .collect()
}

pub fn run_check(c: &Check, ctx: &Ctx) -> CheckResult {
    let start = Instant::now();
    let outcome = (c.run)(ctx);
    let elapsed = start.elapsed();
    let over = elapsed > c.budget;
    let (measured, expected, pass, error) = match outcome {
        Ok(m) => (m.measured, m.expected, m.pass, None),
        Err(e) => (Value::Null, Value::Null, false, Some(e.to_string())),
    };
    let error = error.or_else(|| {
        over.then(|| {
            format!(
                "runtime {:.1}s exceeds budget {}s",
                elapsed.as_secs_f64(),
                c.budget.as_secs()
            )
        })
    });
    CheckResult {
        id: c.id,
        anchor: c.anchor,
        status: if pass && !over { "pass" } else { "fail" },
        measured,
        expected,
        runtime_s: Some((elapsed.as_secs_f64() * 1000.0).round() / 1000.0),
        budget_s: c.budget.as_secs(),
        error,
    }
}

pub fn find(id: &str) -> Option<Check> {
    checks().into_iter().find(|c| c.id == id)
}

fn group(spec: &str) -> Result<PermGroup, Error> {
    parse_group_spec(spec)?.build()
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn corpus_stats(exec: &Exec) -> Result<Vec<SupportStats>, Error> {
    bound_corpus()
        .iter()
        .map(|g| moments(g, 1 << 20, exec))
        .collect()
}

fn cf_moments(ctx: &Ctx) -> Result<Measured, Error> {
    let corpus = bound_corpus();
    let mut mismatches = Vec::new();
    for (i, g) in corpus.iter().enumerate() {
        let s = moments(g, 1 << 20, &ctx.exec)?;
        if s.mean_fix != int(orbit_count(g)) || s.mean_fix_sq != int(rank(g)) {
            mismatches.push(i);
        }
    }
    Ok(Measured {
        pass: corpus.len() == 230 && mismatches.is_empty(),
        measured: json!({ "groups": corpus.len(), "mismatches": mismatches }),
        expected: json!({ "groups": 230, "mismatches": [] }),
    })
}

fn support_bounds(ctx: &Ctx) -> Result<Measured, Error> {
    let stats = corpus_stats(&ctx.exec)?;
    let violations: Vec<usize> = stats
        .iter()
        .enumerate()
        .filter(|(_, s)| {
            let r = check_support_theorem(s);
            !(r.order_holds && r.supp_holds)
        })
        .map(|(i, _)| i)
        .collect();
    let mut sym_sharp = Vec::new();
    for c in 2..=6usize {
        let s = moments(&sym(c)?, 1 << 20, &ctx.exec)?;
        sym_sharp.push(
            json!({ "c": s.c, "order": s.order, "c_factorial": factorial(c as u64).to_string() }),
        );
    }
    let mut hadamard = Vec::new();
    for k in 2..=4u32 {
        let s = moments(&hadamard_perm_group(k)?, 1 << 20, &ctx.exec)?;
        hadamard.push(json!({ "k": k, "c": s.c, "supp_P": s.supp_p }));
    }
    let expected_sym: Vec<Value> = (2..=6u64)
        .map(|c| json!({ "c": c, "order": (1..=c).product::<u64>(), "c_factorial": factorial(c).to_string() }))
        .collect();
    let expected_had: Vec<Value> = (2..=4u32)
        .map(|k| json!({ "k": k, "c": 1u64 << k, "supp_P": 2 * ((1u64 << k) - 1) }))
        .collect();
    let measured = json!({ "groups": stats.len(), "violations": violations, "sym_sharp": sym_sharp, "hadamard_sharp": hadamard });
    let expected = json!({ "groups": 230, "violations": [], "sym_sharp": expected_sym, "hadamard_sharp": expected_had });
    Ok(Measured {
        pass: measured == expected,
        measured,
        expected,
    })
}

fn small_support_order_bound(ctx: &Ctx) -> Result<Measured, Error> {
    let stats = corpus_stats(&ctx.exec)?;
    let mut comparisons = 0;
    let mut violations = Vec::new();
    let mut tightest: Option<(f64, usize, u64)> = None;
    for (i, s) in stats.iter().enumerate() {
        for c in 0..=4u64 {
            let f = f_bound_parts(&s.rho(c as usize), c)?;
            comparisons += 1;
            if !f.at_least(&BigUint::from(s.order)) {
                violations.push(json!({ "group": i, "C": c }));
            }
            let slack = f.log10() - (s.order as f64).log10();
            if tightest.is_none_or(|(t, _, _)| slack < t) {
                tightest = Some((slack, i, c));
            }
        }
    }
    let (slack, gi, gc) = tightest.unwrap_or((0.0, 0, 0));
    Ok(Measured {
        pass: violations.is_empty() && comparisons == 1150,
        measured: json!({
            "comparisons": comparisons,
            "violations": violations,
            "tightest": { "group": gi, "C": gc, "log10_slack": (slack * 1e6).round() / 1e6 },
        }),
        expected: json!({ "comparisons": 1150, "violations": [] }),
    })
}

fn moment_tail_bounds(ctx: &Ctx) -> Result<Measured, Error> {
    let stats = corpus_stats(&ctx.exec)?;
    let eps: Vec<BigRational> = [(1, 10), (1, 3), (1, 2), (2, 3), (9, 10)]
        .iter()
        .map(|&(a, b)| BigRational::new(a.into(), b.into()))
        .collect();
    let mut reports = 0;
    let mut violations = Vec::new();
    for (i, s) in stats.iter().enumerate() {
        for e in &eps {
            for c in 0..=4 {
                let r = markov_chebyshev_report(s, e, c)?;
                reports += 1;
                if !r.holds() {
                    violations.push(json!({ "group": i, "eps": rat(e), "C": c }));
                }
            }
        }
    }
    Ok(Measured {
        pass: violations.is_empty() && reports == 5750,
        measured: json!({ "reports": reports, "violations": violations }),
        expected: json!({ "reports": 5750, "violations": [] }),
    })
}

fn subdirect_rank(_ctx: &Ctx) -> Result<Measured, Error> {
    let mut measured = Vec::new();
    let mut pass = true;
    for (m, k) in [(2usize, 6usize), (3, 24)] {
        let g = group(&format!("ex35:{m}"))?;
        let mut lengths: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
        lengths.dedup();
        let t = orbit_count(&g);
        let r = rank(&g);
        pass &= lengths == [6] && t == k && r >= 2 * t * t;
        measured.push(
            json!({ "m": m, "orbit_lengths": lengths, "t": t, "r": r, "two_t_squared": 2 * t * t }),
        );
    }
    Ok(Measured {
        pass,
        measured: json!(measured),
        expected: json!([
            { "m": 2, "orbit_lengths": [6], "t": 6, "r": ">= 72" },
            { "m": 3, "orbit_lengths": [6], "t": 24, "r": ">= 1152" },
        ]),
    })
}

/// Diagonal part nontrivial, field part of order `f`.
fn psl2_3f_coset(f: u32) -> Result<AutCoset, Error> {
    let outer = OuterSpec {
        eps: 1,
        t: u32::from(f > 1),
    };
    SimpleGroup::new(SimpleSpec::Psl2(3u64.pow(f)))?.coset(outer)
}

fn coset_exponents(fs: &[u32], exec: &Exec) -> Result<Measured, Error> {
    let mut measured = Vec::new();
    let mut expected = Vec::new();
    for &f in fs {
        let c = psl2_3f_coset(f)?;
        let q = 3u64.pow(f);
        measured.push(json!({ "q": q, "f": f, "outer": c.outer(), "coset_size": c.len(), "exponent": coset_exponent(&c, exec) }));
        expected.push(
            json!({ "q": q, "f": f, "outer": c.outer(), "coset_size": c.len(), "exponent": 4 * f }),
        );
    }
    Ok(Measured {
        pass: measured == expected,
        measured: json!(measured),
        expected: json!(expected),
    })
}

fn coset_exponent_small(ctx: &Ctx) -> Result<Measured, Error> {
    coset_exponents(&[1, 2, 3], &ctx.exec)
}

fn coset_exponent_81(ctx: &Ctx) -> Result<Measured, Error> {
    coset_exponents(&[4], &ctx.exec)
}

fn power_coset_identity(ctx: &Ctx) -> Result<Measured, Error> {
    let r = wmb_refute(
        &parse_word("x^12")?,
        SimpleSpec::Psl2(27),
        BUDGET,
        &ctx.exec,
    )?;
    let c9 = SimpleGroup::new(SimpleSpec::Psl2(9))?.coset(OuterSpec { eps: 1, t: 1 })?;
    let x8 = is_coset_identity(&parse_word("x^8")?, &[c9], BUDGET, &ctx.exec)?;
    Ok(Measured {
        pass: r.witness.is_some() && x8,
        measured: json!({
            "x12_psl2_27": { "witness": r.witness, "tuples_checked": r.tuples_checked, "tuples_total": r.tuples_total },
            "x8_psl2_9_coset_identity": x8,
        }),
        expected: json!({ "x12_psl2_27": { "witness": "some outer class" }, "x8_psl2_9_coset_identity": true }),
    })
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, vars: u32) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_letters((0..len).map(|_| {
        let sign = if rng.gen_bool(0.5) {
            Sign::Pos
        } else {
            Sign::Neg
        };
        Letter::new(
            Variable::new(rng.gen_range(1..=vars)).expect("positive"),
            sign,
        )
    }))
}

fn constant_coset_values(ctx: &Ctx) -> Result<Measured, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let specs = [SimpleSpec::Alt(5), SimpleSpec::Psl2(7)];
    let groups: Vec<_> = specs
        .iter()
        .map(|&s| SimpleGroup::new(s))
        .collect::<Result<_, _>>()?;
    let (mut constant, mut nontrivial) = (0, Vec::new());
    for trial in 0..500 {
        let which = rng.gen_range(0..specs.len());
        let word = random_word(&mut rng, 5, 3);
        let outers = specs[which].outer_classes();
        let cosets: Vec<AutCoset> = (0..word.num_variables())
            .map(|_| groups[which].coset(*outers.choose(&mut rng).expect("nonempty")))
            .collect::<Result<_, _>>()?;
        let v = coset_value_set(&word, &cosets, BUDGET, &ctx.exec)?;
        if v.is_constant() {
            constant += 1;
            if !v.first.is_identity() {
                nontrivial.push(json!({ "trial": trial, "word": word, "simple": specs[which] }));
            }
        }
    }
    Ok(Measured {
        pass: nontrivial.is_empty(),
        measured: json!({ "trials": 500, "constant": constant, "nontrivial_constant": nontrivial }),
        expected: json!({ "trials": 500, "nontrivial_constant": [] }),
    })
}

fn nonsolvable_length_values(_ctx: &Ctx) -> Result<Measured, Error> {
    let solvable = ["sym:4", "dih:12", "cyc:30"];
    let one = ["alt:5", "sym:5", "sl2:5", "psl2:7", "prod(alt:5,alt:5)"];
    let enumerated = LambdaOptions {
        engine: Engine::Enumerated,
        ..LambdaOptions::default()
    };
    let bsgs = LambdaOptions {
        engine: Engine::Bsgs,
        ..LambdaOptions::default()
    };
    let mut values = BTreeMap::new();
    let mut compared = Vec::new();
    let mut disagreements = Vec::new();
    for name in solvable.iter().chain(&one) {
        let g = group(name)?;
        let a = nonsolvable_length(&g, enumerated)?.lambda;
        values.insert(name.to_string(), a);
        match nonsolvable_length(&g, bsgs) {
            Ok(r) => {
                compared.push(*name);
                if r.lambda != a {
                    disagreements.push(*name);
                }
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let big = nonsolvable_length(&group("wreath(alt:5,5,alt:5)")?, bsgs)?.lambda;
    let mut expected_values = BTreeMap::new();
    for name in solvable {
        expected_values.insert(name.to_string(), 0);
    }
    for name in one {
        expected_values.insert(name.to_string(), 1);
    }
    let pass = values == expected_values && big == 2 && disagreements.is_empty();
    Ok(Measured {
        pass,
        measured: json!({ "lambda": values, "wreath(alt:5,5,alt:5)": big, "engines_compared": compared, "disagreements": disagreements }),
        expected: json!({ "lambda": expected_values, "wreath(alt:5,5,alt:5)": 2, "disagreements": [] }),
    })
}

fn lambda_exponent_bound(ctx: &Ctx) -> Result<Measured, Error> {
    let named = [
        "alt:5",
        "sym:5",
        "sl2:5",
        "psl2:7",
        "pgl2:7",
        "psl2:8",
        "pgammal2:8",
        "pgammal2:9",
        "sym:6",
        "prod(alt:5,alt:5)",
        "prod(alt:5,cyc:4)",
        "prod(alt:5,psl2:7)",
        "wreath(alt:5,2,sym:2)",
        "wreath(alt:5,5,alt:5)",
    ];
    let opts = LambdaOptions::default();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for name in named {
        let r = check_lambda_exponent_bound(&group(name)?, opts, 20_000, ctx.seed)?;
        if r.verdict != LambdaBoundVerdict::Holds {
            failures.push(name.to_string());
        }
        rows.push(json!({ "group": name, "lambda": r.lambda, "nu2": r.nu2, "exact": r.exact }));
    }
    let mut corpus_nonsolvable = 0;
    for (i, g) in bound_corpus().iter().enumerate() {
        if g.is_solvable() {
            continue;
        }
        corpus_nonsolvable += 1;
        if check_lambda_exponent_bound(g, opts, 0, ctx.seed)?.verdict != LambdaBoundVerdict::Holds {
            failures.push(format!("corpus group {i}"));
        }
    }
    Ok(Measured {
        pass: failures.is_empty(),
        measured: json!({ "groups": rows, "corpus_nonsolvable": corpus_nonsolvable, "failures": failures }),
        expected: json!({ "failures": [] }),
    })
}

fn power_transfer(ctx: &Ctx) -> Result<Measured, Error> {
    let mut rows = Vec::new();
    let mut pass = true;
    for name in ["wreath(alt:5,2,sym:2)", "prod(alt:5,psl2:7)"] {
        let h = enumerate(&group(name)?, 1 << 20)?;
        let e = h.exponent();
        let r = transfer_check_power(&h, e, &ctx.exec)?;
        pass &= r.half_holds && r.holds();
        rows.push(json!({
            "group": name,
            "e": e,
            "p_order": r.p_order.to_string(),
            "p_exponent": r.p_exponent,
            "satisfies_half_power": r.half_holds,
            "cycles_hold": r.cycles_hold,
            "gcd_holds": r.gcd_holds,
        }));
    }
    Ok(Measured {
        pass,
        measured: json!(rows),
        expected: json!([
            { "group": "wreath(alt:5,2,sym:2)", "satisfies_half_power": true },
            { "group": "prod(alt:5,psl2:7)", "satisfies_half_power": true },
        ]),
    })
}

fn coordinate_decomposition_trials(ctx: &Ctx) -> Result<Measured, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let bases: Vec<Vec<Permutation>> = ["cyc:5", "sym:3", "alt:4", "alt:5"]
        .iter()
        .map(|s| {
            Ok(enumerate(&group(s)?, 1 << 10)?
                .permutations()
                .expect("permutation group")
                .to_vec())
        })
        .collect::<Result<_, Error>>()?;
    let (mut trials, mut mismatches) = (0, Vec::new());
    while trials < 1000 {
        let elems = bases.choose(&mut rng).expect("nonempty");
        let base = SymGroup {
            degree: elems[0].degree(),
        };
        let n = rng.gen_range(1..=4usize);
        let wr = WreathProduct::new(base, n);
        let word = random_word(&mut rng, 6, 3);
        if word.is_empty() {
            continue;
        }
        let d = word.num_variables();
        let top = |rng: &mut ChaCha8Rng| {
            let mut images: Vec<u32> = (0..n as u32).collect();
            images.shuffle(rng);
            Permutation::from_images(images)
        };
        let pick = |rng: &mut ChaCha8Rng| elems.choose(rng).expect("nonempty").clone();
        let reps: Vec<WreathElement<Permutation>> = (0..d)
            .map(|_| Ok(wr.element((0..n).map(|_| pick(&mut rng)).collect(), top(&mut rng)?)))
            .collect::<Result<_, Error>>()?;
        let s: Vec<Vec<Permutation>> = (0..d)
            .map(|_| (0..n).map(|_| pick(&mut rng)).collect())
            .collect();
        let system = coordinate_decomposition(&wr, &word, &reps)?;
        let assign: BTreeMap<Variable, WreathElement<Permutation>> = word
            .variables()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let comps = (0..n)
                    .map(|u| s[k][u].compose(&reps[k].components[u]))
                    .collect();
                (v, wr.element(comps, reps[k].top.clone()))
            })
            .collect();
        let direct = evaluate(&wr, &word, &assign)?;
        if system.recompose(&base, &s) != direct {
            mismatches.push(json!({ "trial": trials, "word": word }));
        }
        trials += 1;
    }
    Ok(Measured {
        pass: mismatches.is_empty(),
        measured: json!({ "trials": trials, "mismatches": mismatches }),
        expected: json!({ "trials": 1000, "mismatches": [] }),
    })
}

/// Set partitions of an `n`-set as restricted growth strings.
fn partition_count(n: usize) -> u64 {
    fn go(len: usize, blocks: usize, n: usize) -> u64 {
        if len == n {
            return 1;
        }
        (0..=blocks)
            .map(|b| go(len + 1, blocks.max(b + 1), n))
            .sum()
    }
    go(0, 0, n)
}

/// Every reduced word of length at most 6 in two variables.
fn short_words() -> Vec<Word> {
    let mut out = Vec::new();
    for len in 0..=6u32 {
        for code in 0..4u32.pow(len) {
            let letters = (0..len).map(|k| {
                let c = (code >> (2 * k)) & 3;
                let sign = if c & 1 == 1 { Sign::Pos } else { Sign::Neg };
                Letter::new(Variable::new(1 + (c >> 1)).expect("positive"), sign)
            });
            let w = Word::from_letters(letters);
            if w.len() == len as usize {
                out.push(w);
            }
        }
    }
    out
}

fn word_calculus(_ctx: &Ctx) -> Result<Measured, Error> {
    let w = |s: &str| parse_word(s);
    let mut failures: Vec<String> = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    expect(w("x1 x1^-1 x2")?.to_string() == "x2", "free reduction");
    expect(
        matches!(parse_word("x^0"), Err(Error::ZeroExponent { .. })),
        "zero exponent",
    );
    expect(w("x^2")?.delta_segment(1, 2)? == w("x")?, "delta x^2");
    expect(
        w("x^-1 y x")?.delta_segment(1, 2)?.is_empty(),
        "delta empty",
    );
    expect(
        w("x y x^-1")?.delta_segment(1, 3)? == w("x y x^-1")?,
        "delta whole word",
    );
    expect(w("x^2")?.initial_segment(2)? == w("x")?, "initial segment");
    expect(
        w("x^3")?.enumerate_variations()?.len() == 5,
        "variations of x^3",
    );
    expect(
        w("x^3")?.split_variations(1, 2)?.len() == 3,
        "split variations of x^3",
    );
    expect(
        w("x y x^-1 y^-1")?.split_variations(1, 3)?.len() == 2,
        "split variations of a commutator",
    );

    let words = short_words();
    let mut remark_violations = Vec::new();
    let mut variation_mismatches = Vec::new();
    for word in &words {
        let ls = word.letters();
        let l = ls.len();
        for i in 1..=l {
            for j in i + 1..=l {
                let delta = word.delta_segment(i, j)?;
                let empty =
                    j == i + 1 && ls[i - 1].sign == Sign::Neg && ls[j - 1].sign == Sign::Pos;
                let whole =
                    i == 1 && j == l && ls[0].sign == Sign::Pos && ls[l - 1].sign == Sign::Neg;
                if word.find_segment(&delta).is_none()
                    || delta.is_empty() != empty
                    || (delta == *word) != whole
                {
                    remark_violations.push(json!({ "word": word, "i": i, "j": j }));
                }
            }
        }
        let expected: u64 = word
            .bases()
            .iter()
            .map(|&b| partition_count(word.base_multiplicity(b)))
            .product();
        if word.enumerate_variations()?.len() as u64 != expected {
            variation_mismatches.push(json!(word));
        }
    }
    let bell: Vec<u64> = (0..=6).map(|n| bell_number(n) as u64).collect();
    let partitions: Vec<u64> = (0..=6).map(partition_count).collect();
    Ok(Measured {
        pass: failures.is_empty()
            && remark_violations.is_empty()
            && variation_mismatches.is_empty()
            && bell == partitions,
        measured: json!({
            "example_failures": failures,
            "words_checked": words.len(),
            "segment_rule_violations": remark_violations,
            "variation_mismatches": variation_mismatches,
            "bell": bell,
        }),
        expected: json!({
            "example_failures": [],
            "segment_rule_violations": [],
            "variation_mismatches": [],
            "bell": partitions,
        }),
    })
}

fn fiber_exactness(ctx: &Ctx) -> Result<Measured, Error> {
    let comm = parse_word("x y x^-1 y^-1")?;
    let s3 = enumerate(&group("sym:3")?, 1 << 10)?;
    let a5g = group("alt:5")?;
    let a5 = enumerate(&a5g, 1 << 10)?;
    let p_s3 = fiber_distribution(&comm, &s3, BUDGET, &ctx.exec)?.proportion(0);
    let p_a5 = fiber_distribution(&comm, &a5, BUDGET, &ctx.exec)?.proportion(0);

    let elems = a5g.elements(1 << 10)?;
    let mut brute = 0u64;
    for x in &elems {
        for y in &elems {
            if x.compose(y)
                .compose(&x.inverse())
                .compose(&y.inverse())
                .is_identity()
            {
                brute += 1;
            }
        }
    }
    let brute_p = BigRational::new(brute.into(), ((elems.len() * elems.len()) as u64).into());

    let x = parse_word("x")?;
    let mut uniform = BTreeMap::new();
    for name in ["sym:3", "alt:4"] {
        let g = enumerate(&group(name)?, 1 << 10)?;
        let d = fiber_distribution(&x, &g, BUDGET, &ctx.exec)?;
        uniform.insert(name, d.counts.iter().all(|&c| c == 1));
    }
    let half = BigRational::new(1.into(), 2.into());
    let twelfth = BigRational::new(1.into(), 12.into());
    Ok(Measured {
        pass: p_s3 == half && p_a5 == twelfth && brute_p == twelfth && uniform.values().all(|&u| u),
        measured: json!({
            "commutator_sym3": rat(&p_s3),
            "commutator_alt5": rat(&p_a5),
            "commutator_alt5_brute": { "pairs": elems.len() * elems.len(), "proportion": rat(&brute_p) },
            "x_uniform": uniform,
        }),
        expected: json!({
            "commutator_sym3": rat(&half),
            "commutator_alt5": rat(&twelfth),
            "commutator_alt5_brute": { "pairs": 3600, "proportion": rat(&twelfth) },
            "x_uniform": { "alt:4": true, "sym:3": true },
        }),
    })
}

const DETERMINISM_IDS: [&str; 3] = [
    "small-support-order-bound",
    "coset-exponent",
    "power-coset-identity",
];

fn parallel_determinism(ctx: &Ctx) -> Result<Measured, Error> {
    let mut identical = BTreeMap::new();
    for id in DETERMINISM_IDS {
        let check = find(id).expect("known check");
        let mut outputs = Vec::new();
        for threads in [1, 2, 8] {
            let sub = Ctx {
                exec: Exec::with_threads(threads)?,
                seed: ctx.seed,
            };
            let m = (check.run)(&sub)?;
            let bytes = serde_json::to_string(
                &json!({ "measured": m.measured, "expected": m.expected, "pass": m.pass }),
            )
            .expect("serializable");
            outputs.push(bytes);
        }
        identical.insert(id, outputs.windows(2).all(|w| w[0] == w[1]));
    }
    Ok(Measured {
        pass: identical.values().all(|&b| b),
        measured: json!({ "workers": [1, 2, 8], "identical": identical }),
        expected: json!({ "workers": [1, 2, 8], "identical": DETERMINISM_IDS.iter().map(|&id| (id, true)).collect::<BTreeMap<_, _>>() }),
    })
}
