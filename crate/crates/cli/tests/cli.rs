use nslen_cli::{run, Outcome, EXIT_CHECK_FAILED};
use serde_json::Value;

fn nslen(args: &str) -> Outcome {
    run(std::iter::once("nslen").chain(args.split_whitespace()))
}

fn json(args: &str) -> (i32, Value) {
    let out = nslen(&format!("--json {args}"));
    let v =
        serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args}: {e}\n{}", out.stdout));
    (out.code, v)
}

#[test]
fn lambda_of_sym5() {
    let (code, v) = json("lambda --group sym:5");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["lambda"], 1);
    assert_eq!(v["verdict"], "computed");
    assert_eq!(v["tool"], "nslen");
    assert_eq!(v["input"]["group"], "sym:5");
    assert_eq!(v["config"]["threads"], 1);
}

#[test]
fn wmb_witness_for_x12() {
    let (code, v) = json("wmb --word x^12 --simple psl2:27");
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "coset_identity_found");
    let w = &v["result"]["witness"][0];
    assert_eq!(w["eps"], 1);
    let (code, v) = json("wmb --word x^2 --simple alt:5");
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "no_coset_identity");
}

#[test]
fn enumeration_cap_exits_two() {
    let out = nslen("lambda --group wreath(alt:5,5,alt:5) --engine enum");
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.contains("enumeration cap exceeded"),
        "{}",
        out.stderr
    );
    let (code, v) = json("lambda --group wreath(alt:5,5,alt:5) --engine enum");
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "budget");
    let (code, v) = json("lambda --group wreath(alt:5,5,alt:5) --engine bsgs");
    assert_eq!((code, v["result"]["lambda"].as_u64()), (0, Some(2)));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        "",
        "frobnicate",
        "fibers --word x^0 --group sym:3",
        "fibers --word x --group foo:3",
        "fibers --word x( --group sym:3",
        "--threads 0 group --group sym:3",
        "lambda --group sym:3 --engine magic",
        "coset --word x*y --simple psl2:9 --outer 1,1",
        "identity --word x --group sym:3 --rho one-half",
        "fibers --word x --group sym:3 --exact --samples 10",
    ] {
        assert_eq!(nslen(args).code, 1, "{args}");
    }
    assert_eq!(nslen("--help").code, 0);
}

#[test]
fn unsupported_inputs_exit_two() {
    assert_eq!(nslen("wmb --word x^2 --simple alt:6").code, 2);
    assert_eq!(nslen("perm-part --group sym:4").code, 2);
    assert_eq!(
        nslen("fibers --word x*y*z --group alt:5 --max-tuples 1000").code,
        2
    );
}

#[test]
fn rationals_are_exact_strings() {
    let (_, v) = json("fibers --word x*y*x^-1*y^-1 --group sym:3");
    let p = &v["result"]["identity"]["proportion"];
    assert_eq!(
        (p["num"].as_str(), p["den"].as_str()),
        (Some("1"), Some("2"))
    );
    let (_, v) = json("fibers --word x*y*x^-1*y^-1 --group alt:5");
    let p = &v["result"]["identity"]["proportion"];
    assert_eq!(
        (p["num"].as_str(), p["den"].as_str()),
        (Some("1"), Some("12"))
    );
    assert_eq!(v["result"]["total"], "3600");
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        "fibers --word x*y*x^-1*y^-1*x --group alt:5",
        "fibers --word x^2*y --group sym:6 --samples 20000 --seed 7",
        "bad-scan --exponent 360 --catalog alt:5,psl2:7,psl2:27",
        "coset --word x^4*y --simple psl2:9 --outer 1,1;0,1 --full 400",
    ] {
        let a = nslen(&format!("--json {args}"));
        let b = nslen(&format!("--json {args}"));
        assert_eq!(a, b, "{args}");
        let (_, one) = json(&format!("--threads 1 {args}"));
        let (_, four) = json(&format!("--threads 4 {args}"));
        assert_eq!(one["result"], four["result"], "{args}");
    }
}

#[test]
fn sampled_fibers_depend_on_the_seed() {
    let (_, a) = json("fibers --word x^2 --group sym:6 --samples 5000 --seed 1");
    let (_, b) = json("fibers --word x^2 --group sym:6 --samples 5000 --seed 2");
    assert_eq!(a["result"]["mode"], "sampled");
    assert_ne!(a["result"]["identity_count"], b["result"]["identity_count"]);
}

#[test]
fn identity_verdicts() {
    let (code, v) = json("identity --word x^30 --group alt:5");
    assert_eq!((code, v["verdict"].as_str()), (0, Some("satisfied")));
    let (code, v) = json("identity --word x^15 --group alt:5");
    assert_eq!((code, v["verdict"].as_str()), (0, Some("refuted")));
    assert_ne!(v["result"]["value"], "()");
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 1);
    let (_, v) = json("identity --word x^2 --group alt:5 --rho 1/4");
    assert_eq!(v["verdict"], "holds");
    let p = &v["result"]["proportion"];
    assert_eq!(
        (p["num"].as_str(), p["den"].as_str()),
        (Some("4"), Some("15"))
    );
}

#[test]
fn coset_values() {
    let (_, v) = json("coset --word x^8 --simple psl2:9 --outer 1,1");
    assert_eq!(v["verdict"], "coset_identity");
    assert_eq!(v["result"]["first_value"], "()");
    let (_, v) = json("coset --word x --simple alt:5 --outer 1,0 --full 100");
    assert_eq!(v["verdict"], "not_constant");
    assert_eq!(v["result"]["value_count"], 60);
}

#[test]
fn perm_stats_report() {
    let (code, v) = json("perm-stats --group sym:4 --eps 1/2 --c 2");
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(
        (r["t"].as_u64(), r["r"].as_u64(), r["c"].as_u64()),
        (Some(1), Some(2), Some(4))
    );
    assert_eq!(r["supp_P"], 4);
    assert_eq!(r["mean_fix"]["num"], "1");
    assert_eq!(r["sb_counts"]["2"], 7);
    assert!(r["bounds"]["f_rho_C"]["holds"].as_bool().unwrap());
    assert_eq!(v["verdict"], "all_bounds_hold");
}

#[test]
fn structure_commands() {
    let (_, v) = json("radical --group sl2:5");
    assert_eq!(v["result"]["order"], "2");
    let (_, v) = json("socle --group sym:4");
    assert_eq!(v["result"]["order"], "4");
    let (_, v) = json("socle --group wreath(alt:5,2,sym:2)");
    assert_eq!(v["result"]["isotypes"][0]["count"], 2);
    assert_eq!(v["result"]["isotypes"][0]["simple"], "alt:5");
    let (_, v) = json("perm-part --group wreath(alt:5,2,sym:2)");
    assert_eq!(v["result"]["order"], "2");
    for cmd in ["radical", "socle", "perm-part"] {
        let (code, v) = json(&format!("{cmd} --group wreath(alt:5,5,alt:5)"));
        assert_eq!(
            (code, v["result"]["method"].as_str()),
            (0, Some("certificate")),
            "{cmd}"
        );
    }
    let (_, v) = json("socle --group wreath(alt:5,5,alt:5)");
    assert_eq!(v["result"]["order"], "777600000");
    assert_eq!(v["result"]["certificate"]["blocks"][0][0], 1);
    let (_, v) = json("group --group psl2:7");
    assert_eq!(v["result"]["exponent"], 84);
    assert_eq!(v["result"]["identified_as"], "psl2:7");
}

#[test]
fn text_mode_prints_a_summary() {
    let out = nslen("lambda --group sym:5");
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("lambda: computed"));
    assert!(out.stdout.contains("lambda: 1"));
    let out = nslen("fibers --word x*y*x^-1*y^-1 --group sym:3");
    assert!(out.stdout.contains("1/2"));
}

#[test]
fn verify_paper_filtering() {
    let out = nslen("verify-paper --filter no-such-check");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("0 checks run"));

    let (code, v) = json("verify-paper --filter coset-exponent --no-timing");
    assert_eq!(code, 0);
    assert_eq!(v["result"]["run"], 1);
    let check = &v["result"]["checks"][0];
    assert_eq!(check["status"], "pass");
    assert!(check.get("runtime_s").is_none());
    let fs: Vec<u64> = check["measured"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["exponent"].as_u64().unwrap())
        .collect();
    assert_eq!(fs, [4, 8, 12]);

    let out = nslen("verify-paper --filter 4f --no-timing");
    assert!(out.stdout.contains("coset-exponent") && out.stdout.contains("power-coset-identity"));
    let a = nslen("verify-paper --filter word-calculus,fiber --no-timing --json");
    let b = nslen("verify-paper --filter word-calculus,fiber --no-timing --json");
    assert_eq!(a, b);
    assert_ne!(a.code, EXIT_CHECK_FAILED);
}
