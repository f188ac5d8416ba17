use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use onemotive::cohomology::{self, ComparisonInput, ProperCohData, SmoothCohData};
use onemotive::duality::{cartier_dual, cartier_dual_morphism, double_dual_motive_iso, sharp_pairing};
use onemotive::formal_hodge::{ehs_to_fhs, Ehs1, Fhs1};
use onemotive::groups::smith_normal_form;
use onemotive::hodge::Mhs1;
use onemotive::json::vec_json;
use onemotive::motives::random::{motive_suite, RandomParams};
use onemotive::motives::{
    check_strongly_exact, fixtures, hom_to_ga, motive_from_fhs, sharp_extension, t_oint, t_sharp, universal_extension,
    v_map, MotiveDatum, MotiveMorphism,
};
use onemotive::sharp::{sharp_envelope, split_check, split_conditions};
use onemotive::{Error, FgAbGroup, ZMatrix};

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "onemotive", version, about = "Exact computations with linearized 1-motives over Q(i)")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone)]
struct Io {
    /// Input JSON file; stdin when absent.
    #[arg(long = "in", value_name = "PATH")]
    input: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long = "out", value_name = "PATH")]
    output: Option<PathBuf>,
    /// Use a built-in fixture instead of reading input.
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args, Clone)]
struct Suite {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Validate a motive, morphism, formal or enriched Hodge structure, MHS, group or cohomology datum.
    Validate(Io),
    /// Smith normal form of an integer matrix.
    Snf(Io),
    /// Sharp envelope of T∮(M) (or of a formal Hodge structure) and T♯(M).
    Sharp(Io),
    /// Universal G_a-extension.
    Uext(Io),
    /// Cartier dual of a motive or a morphism.
    Dual(Io),
    /// The pairing T♯(M) x T♯(M*) -> C with its block identities.
    Pair(Io),
    /// T∮: motive to formal Hodge structure.
    Realize(Io),
    /// Quasi-inverse of T∮.
    Unrealize(Io),
    /// Etale / special / connected classification with the splitting conditions.
    Classify(Io),
    /// Strong exactness of a sequence of motive morphisms.
    Exactcheck(Io),
    /// H¹_♯-dR of proper or smooth cohomology data, with the comparison criteria.
    Cohom(Io),
    /// T∮(M^♯) against (T∮ M)^♯ on one motive or a seeded random suite.
    Compare {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        suite: Suite,
    },
}

/// Failure modes with their exit codes.
enum Failure {
    Parse(String),
    Domain(Error),
    /// A check ran and reports a negative result.
    Negative(&'static str, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<(&'static str, Value), Failure>;

fn envelope(kind: &str, payload: Value) -> Value {
    json!({"kind": kind, "version": 1, "payload": payload})
}

fn error_object(e: &Error) -> Value {
    let mut obj = json!({"code": e.code(), "message": e.to_string()});
    match e {
        Error::NoUniversalExtension { witness } => obj["witness"] = vec_json(witness),
        Error::Invalid { reasons, .. } => obj["reasons"] = json!(reasons),
        _ => {}
    }
    obj
}

struct Input {
    kind: Option<String>,
    payload: Value,
}

fn read_input(io: &Io) -> Result<Input, Failure> {
    if let Some(name) = &io.fixture {
        return fixture(name).map(|(k, v)| Input { kind: Some(k.into()), payload: v });
    }
    let text = match &io.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Parse(e.to_string()))?;
            s
        }
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(e.to_string()))?;
    match (v.get("kind"), v.get("payload")) {
        (Some(Value::String(k)), Some(p)) => Ok(Input { kind: Some(k.clone()), payload: p.clone() }),
        _ => Ok(Input { kind: None, payload: v }),
    }
}

fn fixture(name: &str) -> Result<(&'static str, Value), Failure> {
    if let Some(m) = fixtures::by_name(name) {
        return Ok(("motive", m.to_json()));
    }
    if name == "counterexample" {
        let seq = fixtures::seq_counter();
        return Ok(("sequence", json!({"sequence": seq.iter().map(MotiveMorphism::to_json).collect::<Vec<_>>()})));
    }
    if let Some((_, d)) = cohomology::fixtures::proper_all().into_iter().find(|(n, _)| *n == name) {
        return Ok(("properCohomology", d.to_json()));
    }
    if let Some((_, d)) = cohomology::fixtures::smooth_all().into_iter().find(|(n, _)| *n == name) {
        return Ok(("smoothCohomology", d.to_json()));
    }
    Err(Failure::Parse(format!("unknown fixture '{name}'")))
}

/// The payload kind, from the envelope or from its characteristic keys.
fn kind_of(inp: &Input) -> &str {
    if let Some(k) = &inp.kind {
        return k;
    }
    let v = &inp.payload;
    let has = |k: &str| v.get(k).is_some();
    if has("formal") {
        "motive"
    } else if has("source") {
        "morphism"
    } else if has("h0dim") {
        "fhs"
    } else if has("udim") {
        "ehs"
    } else if has("sequence") {
        "sequence"
    } else if has("h1O") {
        "properCohomology"
    } else if has("h1Obar") {
        "smoothCohomology"
    } else if has("proper") || has("smooth") {
        "cohomology"
    } else if has("Wm2") {
        "mhs"
    } else if has("generators") {
        "group"
    } else if has("matrix") || v.is_array() {
        "matrix"
    } else {
        "unknown"
    }
}

/// Decoding failures of shape or syntax are parse errors; failed validation is a domain error.
fn decode<T>(r: onemotive::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse(_) | Error::DimensionMismatch(_) => Failure::Parse(e.to_string()),
        e => Failure::Domain(e),
    })
}

fn motive(inp: &Input) -> Result<MotiveDatum, Failure> {
    expect(inp, "motive")?;
    decode(MotiveDatum::from_json(&inp.payload))
}

fn fhs(inp: &Input) -> Result<Fhs1, Failure> {
    match kind_of(inp) {
        "fhs" => decode(Fhs1::from_json(&inp.payload)).and_then(|x| Ok(x.checked()?)),
        "motive" => Ok(t_oint(&motive(inp)?)?),
        "ehs" => Ok(ehs_to_fhs(&decode(Ehs1::from_json(&inp.payload))?)?),
        k => Err(Failure::Parse(format!("expected a motive or a formal Hodge structure, got '{k}'"))),
    }
}

fn expect(inp: &Input, kind: &str) -> Result<(), Failure> {
    match kind_of(inp) {
        k if k == kind => Ok(()),
        k => Err(Failure::Parse(format!("expected '{kind}' input, got '{k}'"))),
    }
}

fn validate(inp: &Input) -> Outcome {
    let report = match kind_of(inp) {
        "motive" => match MotiveDatum::from_json(&inp.payload) {
            Ok(m) => m.validate().to_json(),
            Err(Error::Invalid { reasons, .. }) => json!({"valid": false, "failures": reasons, "ranks": null}),
            Err(e) => return Err(decode::<()>(Err(e)).unwrap_err()),
        },
        "morphism" => match MotiveMorphism::from_json(&inp.payload) {
            Ok(_) => json!({"valid": true, "failures": []}),
            Err(Error::Invalid { reasons, .. }) => json!({"valid": false, "failures": reasons}),
            Err(e) => return Err(decode::<()>(Err(e)).unwrap_err()),
        },
        "fhs" => decode(Fhs1::from_json(&inp.payload))?.validate().to_json(),
        "ehs" => {
            let e = decode(Ehs1::from_json(&inp.payload))?;
            let failures = e.validate();
            json!({"valid": failures.is_empty(), "failures": failures})
        }
        "mhs" => decode(Mhs1::from_json(&inp.payload))?.validate().to_json(),
        "group" => {
            let g = decode(FgAbGroup::from_json(&inp.payload))?;
            json!({"valid": true, "failures": [], "isoType": g.iso_type().to_json()})
        }
        "properCohomology" => {
            let f = decode(ProperCohData::from_json(&inp.payload))?.validate();
            json!({"valid": f.is_empty(), "failures": f})
        }
        "smoothCohomology" => {
            let f = decode(SmoothCohData::from_json(&inp.payload))?.validate();
            json!({"valid": f.is_empty(), "failures": f})
        }
        k => return Err(Failure::Parse(format!("cannot validate '{k}'"))),
    };
    if report["valid"] == json!(true) {
        Ok(("validation", report))
    } else {
        Err(Failure::Negative("validation", report))
    }
}

fn snf(inp: &Input) -> Outcome {
    expect(inp, "matrix")?;
    let rows = inp.payload.get("matrix").unwrap_or(&inp.payload);
    let a: ZMatrix = serde_json::from_value(rows.clone()).map_err(|e| Failure::Parse(e.to_string()))?;
    Ok(("snf", smith_normal_form(&a).to_json()))
}

fn sharp(inp: &Input) -> Outcome {
    if kind_of(inp) == "motive" {
        let m = motive(inp)?;
        let s = sharp_extension(&m)?;
        let mut out = s.envelope.to_json();
        out["tSharp"] = t_sharp(&m)?.to_json();
        out["motiveSharp"] = s.motive.to_json();
        out["realizationMatches"] = json!(s.matches_envelope()?);
        return Ok(("sharpEnvelope", out));
    }
    Ok(("sharpEnvelope", sharp_envelope(&fhs(inp)?)?.to_json()))
}

fn uext(inp: &Input) -> Outcome {
    Ok(("universalExtension", universal_extension(&motive(inp)?)?.to_json()))
}

fn dual(inp: &Input) -> Outcome {
    match kind_of(inp) {
        "morphism" => {
            let f = decode(MotiveMorphism::from_json(&inp.payload))?;
            Ok(("morphism", cartier_dual_morphism(&f)?.to_json()))
        }
        _ => {
            let m = motive(inp)?;
            let d = cartier_dual(&m)?;
            let mut out = d.to_json();
            out["doubleDualIsIdentity"] = json!(double_dual_motive_iso(&m)?.is_isomorphism());
            Ok(("motive", out))
        }
    }
}

fn pair(inp: &Input) -> Outcome {
    Ok(("pairing", sharp_pairing(&motive(inp)?)?.to_json()))
}

fn realize(inp: &Input) -> Outcome {
    Ok(("fhs", t_oint(&motive(inp)?)?.to_json()))
}

fn unrealize(inp: &Input) -> Outcome {
    expect(inp, "fhs")?;
    Ok(("motive", motive_from_fhs(&fhs(inp)?)?.to_json()))
}

fn classify(inp: &Input) -> Outcome {
    let x = fhs(inp)?;
    let c = split_conditions(&x)?;
    let mut out = json!({
        "classification": x.classify().to_json(),
        "splitCheck": split_check(&x)?,
        "splitConditions": {
            "special": c.special,
            "quotientEnvelopeSpecial": c.quotient_envelope_special,
            "splittingLandsInSharp0": c.splitting_lands_in_sharp0,
        },
    });
    if kind_of(inp) == "motive" {
        let m = motive(inp)?;
        let hom = hom_to_ga(&m);
        out["homToGa"] = json!({"dim": hom.dim(), "zero": hom.is_zero()});
        out["vMapSurjective"] = json!(v_map(&m)?.is_surjective());
    }
    Ok(("classification", out))
}

fn exactcheck(inp: &Input) -> Outcome {
    expect(inp, "sequence")?;
    let items =
        inp.payload["sequence"].as_array().ok_or_else(|| Failure::Parse("\"sequence\" must be an array".into()))?;
    let seq = items.iter().map(|v| decode(MotiveMorphism::from_json(v))).collect::<Result<Vec<_>, _>>()?;
    Ok(("strongExactness", check_strongly_exact(&seq)?.to_json()))
}

fn cohom(inp: &Input) -> Outcome {
    let (kind, data) = match kind_of(inp) {
        "cohomology" => match (inp.payload.get("proper"), inp.payload.get("smooth")) {
            (Some(p), None) => ("properCohomology", p),
            (None, Some(s)) => ("smoothCohomology", s),
            _ => return Err(Failure::Parse("give exactly one of \"proper\" and \"smooth\"".into())),
        },
        k => (k, &inp.payload),
    };
    match kind {
        "properCohomology" => {
            let d = decode(ProperCohData::from_json(data))?;
            let mut out = cohomology::h1_sharp_proper(&d)?.to_json();
            if let Some(c) = inp.payload.get("comparison") {
                let c = decode(ComparisonInput::from_json(c, &d))?;
                out["comparison"] = cohomology::comparison_criteria(&d, &c)?.to_json();
            }
            Ok(("h1SharpDR", out))
        }
        "smoothCohomology" => {
            let d = decode(SmoothCohData::from_json(data))?;
            Ok(("h1SharpDR", cohomology::h1_sharp_smooth(&d)?.to_json()))
        }
        k => Err(Failure::Parse(format!("expected cohomology data, got '{k}'"))),
    }
}

fn compare_one(m: &MotiveDatum) -> onemotive::Result<bool> {
    let s = sharp_extension(m)?;
    Ok(t_oint(&s.motive)? == sharp_envelope(&t_oint(m)?)?.result)
}

fn compare(io: &Io, suite: &Suite) -> Outcome {
    let cases: Vec<(String, MotiveDatum)> = if io.input.is_some() || io.fixture.is_some() {
        vec![("input".into(), motive(&read_input(io)?)?)]
    } else {
        let mut v: Vec<(String, MotiveDatum)> = fixtures::all().into_iter().map(|(n, m)| (n.to_string(), m)).collect();
        let rand = motive_suite(suite.seed, suite.count, &RandomParams::default());
        v.extend(rand.into_iter().enumerate().map(|(i, m)| (format!("random-{i}"), m)));
        v
    };
    let mut failures = Vec::new();
    for (name, m) in &cases {
        match compare_one(m) {
            Ok(true) => {}
            Ok(false) => failures.push(json!({"case": name, "reason": "realizations differ"})),
            Err(e) => failures.push(json!({"case": name, "reason": error_object(&e)})),
        }
    }
    let out = json!({"cases": cases.len(), "failures": failures, "passed": failures.is_empty()});
    if failures.is_empty() {
        Ok(("comparison", out))
    } else {
        Err(Failure::Negative("comparison", out))
    }
}

fn run(verb: &Verb) -> (Option<&Io>, Outcome) {
    let with = |io: &Io, f: fn(&Input) -> Outcome| read_input(io).and_then(|i| f(&i));
    match verb {
        Verb::Validate(io) => (Some(io), with(io, validate)),
        Verb::Snf(io) => (Some(io), with(io, snf)),
        Verb::Sharp(io) => (Some(io), with(io, sharp)),
        Verb::Uext(io) => (Some(io), with(io, uext)),
        Verb::Dual(io) => (Some(io), with(io, dual)),
        Verb::Pair(io) => (Some(io), with(io, pair)),
        Verb::Realize(io) => (Some(io), with(io, realize)),
        Verb::Unrealize(io) => (Some(io), with(io, unrealize)),
        Verb::Classify(io) => (Some(io), with(io, classify)),
        Verb::Exactcheck(io) => (Some(io), with(io, exactcheck)),
        Verb::Cohom(io) => (Some(io), with(io, cohom)),
        Verb::Compare { io, suite } => (Some(io), compare(io, suite)),
    }
}

fn emit(io: Option<&Io>, v: &Value) -> std::io::Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("values serialize");
    text.push('\n');
    match io.and_then(|i| i.output.as_ref()) {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (io, outcome) = run(&cli.verb);
    let (value, code) = match outcome {
        Ok((kind, payload)) => (envelope(kind, payload), 0),
        Err(Failure::Negative(kind, payload)) => (envelope(kind, payload), 1),
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            (envelope("error", error_object(&e)), 1)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("parse error: {msg}");
            (envelope("error", json!({"code": "parse", "message": msg})), 2)
        }
    };
    if let Err(e) = emit(io, &value) {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
