//! Batch verification driver.
//!
//! Subcommands mirror the library layers: `algebra` builds and classifies
//! graded algebras, `verify` runs the identity and degeneration suites,
//! `orbit` samples and checks cone geometry, `lattice` handles the del
//! Pezzo dictionaries. Machine output goes to stdout and is byte-identical
//! for a fixed seed; progress and timing go to stderr. Exit codes: 0 all
//! checks pass, 1 a check failed, 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use chevalley::algebra::{
    adjoint_fundamental_gradings, five_term_gradings, format_case, parse_case,
};
use chevalley::invariants::identity_checks;
use chevalley::orbit::{self, GroupStep};
use chevalley::picard::{self, Blowdown, DegreeOne, DegreeTwo};
use chevalley::series;
use chevalley::{AdjointModule, GradedAlgebra, QuarticData, Report, SignConvention};

#[derive(Parser)]
#[command(name = "chevalley", version, about = "Exact verification of graded Chevalley algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or classify graded algebras.
    Algebra {
        #[command(subcommand)]
        cmd: AlgebraCmd,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Sample orbit cones and check their geometry.
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Del Pezzo Picard lattices and the blowdown dictionary.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Construct an algebra graded by a marked simple root and dump its
    /// structure constants.
    Build {
        /// Cartan type, e.g. E8.
        #[arg(long = "type")]
        cartan_type: String,
        /// Marked node, e.g. a8.
        #[arg(long)]
        grade: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the five-term gradings and the adjoint-fundamental ones.
    Classify {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The full identity suite on one graded case.
    Identities {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Degeneration limits along the scaling torus.
    LimitBl {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of (x, a) pairs to push through the limit.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Draw random points of a cone as explicit group words.
    Sample {
        /// Which cone: `gp` (ambient module) or `g'p'` (grade -1).
        #[arg(long)]
        cone: String,
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check cone equations, tangents and the chart decomposition.
    Check {
        /// Restrict to one cone; both when omitted.
        #[arg(long)]
        cone: Option<String>,
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Stability of random fat weight supports. The fat-implies-stable
    /// checks carry content only where grade 0 has close root pairs; the
    /// report names the pair count either way.
    Stability {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// List the lines on one surface with their intersection data.
    Lines {
        /// `dp1` (degree one) or `dp2` (degree two).
        #[arg(long)]
        surface: String,
        #[arg(long)]
        json: bool,
    },
    /// The blowdown dictionary from the 240 lines to the curve classes,
    /// with the full lattice check suite.
    Dictionary {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// GraphViz intersection graph of the lines.
    Graph {
        #[arg(long)]
        surface: String,
        /// Keep edges with intersection at least this value.
        #[arg(long, default_value_t = 2)]
        min: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, so a reader that closes early (head,
    // less) would turn every println into a broken-pipe panic. Die quietly
    // instead, like the rest of the shell pipeline.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli) {
        Ok(pass) => {
            eprintln!(
                "{} in {:.2?}",
                if pass { "pass" } else { "FAIL" },
                start.elapsed()
            );
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load_module(case: &str) -> Result<AdjointModule, Failure> {
    AdjointModule::from_case(case, SignConvention::default())
        .map_err(|e| Failure::Usage(format!("case {case}: {e}")))
}

fn emit_report(report: &Report, json: bool) -> bool {
    if json {
        println!("{}", report.to_json_string());
    } else {
        print!("{}", report.to_text());
    }
    let good = report.checks.iter().filter(|c| c.pass).count();
    eprintln!(
        "{}: {}/{} checks passed",
        report.command,
        good,
        report.checks.len()
    );
    report.pass
}

fn element_json(x: &chevalley::AlgebraElement) -> Value {
    let mut idx: Vec<usize> = x.support().collect();
    idx.sort_unstable();
    Value::Array(
        idx.into_iter()
            .map(|i| json!([i, x.get(i).to_string()]))
            .collect(),
    )
}

fn step_json(s: &GroupStep) -> Value {
    match s {
        GroupStep::Exp { root, coeff } => {
            json!({"exp": {"root": root.0, "coeff": coeff.to_string()}})
        }
        GroupStep::Torus { lambda, t } => {
            json!({"torus": {"lambda": lambda, "t": t.to_string()}})
        }
        GroupStep::Scale(c) => json!({"scale": c.to_string()}),
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.cmd {
        Cmd::Algebra { cmd } => match cmd {
            AlgebraCmd::Build { cartan_type, grade, out } => {
                let (t, mark) = parse_case(&format!("{cartan_type}:{grade}"))
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                let g = GradedAlgebra::graded(t, mark, SignConvention::default())
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                let doc = serde_json::to_string_pretty(&g.to_json()).expect("serializes");
                match out {
                    Some(path) => {
                        fs::write(&path, doc)
                            .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
                        eprintln!("wrote {}", path.display());
                    }
                    None => println!("{doc}"),
                }
                eprintln!(
                    "{} marked {}: dim {}, grading {:?}",
                    t,
                    grade,
                    g.dim,
                    g.grade_dims().map_err(|e| Failure::Runtime(e.to_string()))?
                );
                Ok(true)
            }
            AlgebraCmd::Classify { json } => {
                let five: Vec<String> = five_term_gradings(8)
                    .into_iter()
                    .map(|(t, i)| format_case(t, i))
                    .collect();
                let adjoint: Vec<String> = adjoint_fundamental_gradings(8)
                    .into_iter()
                    .map(|(t, i)| format_case(t, i))
                    .collect();
                if json {
                    let doc = json!({
                        "command": "algebra classify",
                        "five_term": five,
                        "adjoint_fundamental": adjoint,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
                } else {
                    println!("five-term gradings ({}):", five.len());
                    for c in &five {
                        println!("  {c}");
                    }
                    println!("adjoint-fundamental gradings ({}):", adjoint.len());
                    for c in &adjoint {
                        println!("  {c}");
                    }
                }
                eprintln!(
                    "{} five-term, {} adjoint-fundamental",
                    five.len(),
                    adjoint.len()
                );
                Ok(true)
            }
        },
        Cmd::Verify { cmd } => match cmd {
            VerifyCmd::Identities { case, trials, seed, json } => {
                let m = load_module(&case)?;
                let qd = QuarticData::new(m);
                let report =
                    Report::new("verify identities", Some(case), Some(seed), identity_checks(&qd, trials, seed))
                        .with_trials(trials);
                Ok(emit_report(&report, json))
            }
            VerifyCmd::LimitBl { case, seed, samples, json } => {
                let m = load_module(&case)?;
                let report =
                    Report::new("verify limit-bl", Some(case), Some(seed), series::series_checks(&m, samples, seed))
                        .with_samples(samples);
                Ok(emit_report(&report, json))
            }
        },
        Cmd::Orbit { cmd } => match cmd {
            OrbitCmd::Sample { cone, case, seed, samples, json } => {
                orbit_sample(&cone, &case, seed, samples, json)
            }
            OrbitCmd::Check { cone, case, seed, samples, json } => {
                let m = load_module(&case)?;
                let mut checks = orbit::orbit_checks(&m, samples, seed);
                if let Some(cone) = cone.as_deref() {
                    let keep: &[&str] = match cone {
                        "g'p'" => &[
                            "cone-equation",
                            "tangent-dim",
                            "tangent-pairing",
                            "tangent-quadric",
                            "exp-fixes-tangent",
                            "annihilator-highest",
                            "annihilator-adjacent",
                            "annihilator-grade-one",
                        ],
                        "gp" => &[
                            "fiber-roundtrip",
                            "projection-scaling",
                            "degenerate-branch",
                            "annihilator-highest",
                            "annihilator-adjacent",
                            "annihilator-grade-one",
                        ],
                        other => {
                            return Err(Failure::Usage(format!(
                                "unknown cone {other:?}; expected gp or g'p'"
                            )))
                        }
                    };
                    checks.retain(|c| keep.contains(&c.id.as_str()));
                }
                let report = Report::new("orbit check", Some(case), Some(seed), checks)
                    .with_samples(samples);
                Ok(emit_report(&report, json))
            }
            OrbitCmd::Stability { case, seed, samples, json } => {
                let m = load_module(&case)?;
                let report = Report::new(
                    "orbit stability",
                    Some(case),
                    Some(seed),
                    orbit::stability_checks(&m, samples, seed),
                )
                .with_samples(samples);
                Ok(emit_report(&report, json))
            }
        },
        Cmd::Lattice { cmd } => match cmd {
            LatticeCmd::Lines { surface, json } => lattice_lines(&surface, json),
            LatticeCmd::Dictionary { seed, json } => lattice_dictionary(seed, json),
            LatticeCmd::Graph { surface, min, out } => {
                let dot = match surface.as_str() {
                    "dp1" => picard::dp1_line_graph(&DegreeOne::new(), min),
                    "dp2" => picard::dp2_line_graph(&DegreeTwo::new(), min),
                    other => {
                        return Err(Failure::Usage(format!(
                            "unknown surface {other:?}; expected dp1 or dp2"
                        )))
                    }
                };
                match out {
                    Some(path) => {
                        fs::write(&path, &dot)
                            .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
                        eprintln!("wrote {}", path.display());
                    }
                    None => print!("{dot}"),
                }
                eprintln!(
                    "{} graph, {} edges at intersection >= {}",
                    surface,
                    dot.matches(" -- ").count(),
                    min
                );
                Ok(true)
            }
        },
    }
}

fn orbit_sample(
    cone: &str,
    case: &str,
    seed: u64,
    samples: usize,
    json: bool,
) -> Result<bool, Failure> {
    use rand::SeedableRng;
    let m = load_module(case)?;
    // ChaCha8 keeps sampling reproducible across platforms.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    let mut pass = true;

    match cone {
        "g'p'" => {
            for k in 0..samples {
                let pt = orbit::sample_gprime_point(&m, &mut rng);
                let (on, detail) = orbit::on_gprime_cone(&m, &pt.vector);
                pass &= on;
                entries.push(json!({
                    "index": k,
                    "word": pt.word.iter().map(step_json).collect::<Vec<_>>(),
                    "coords": element_json(&pt.vector),
                    "on_cone": on,
                    "detail": detail,
                }));
            }
        }
        "gp" => {
            for k in 0..samples {
                let pt = orbit::sample_gp_point(&m, &mut rng);
                let in_chart = pt.vector.get(m.v_index) != chevalley::rat::qi(0);
                let mut roundtrip = None;
                if in_chart {
                    let ok = orbit::fiber_decomposition(&m, &pt.vector)
                        .and_then(|data| orbit::chart_point(&m, &data))
                        .map(|rebuilt| rebuilt == pt.vector)
                        .unwrap_or(false);
                    pass &= ok;
                    roundtrip = Some(ok);
                }
                entries.push(json!({
                    "index": k,
                    "word": pt.word.iter().map(step_json).collect::<Vec<_>>(),
                    "coords": element_json(&pt.vector),
                    "in_chart": in_chart,
                    "roundtrip": roundtrip,
                }));
            }
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown cone {other:?}; expected gp or g'p'"
            )))
        }
    }

    if json {
        let doc = json!({
            "command": "orbit sample",
            "case": case,
            "cone": cone,
            "seed": seed,
            "samples": entries,
            "pass": pass,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        for e in &entries {
            let word_len = e["word"].as_array().map_or(0, Vec::len);
            let status = if cone == "gp" {
                match (e["in_chart"].as_bool(), e["roundtrip"].as_bool()) {
                    (Some(true), Some(true)) => "chart roundtrip ok",
                    (Some(false), _) => "outside the open chart",
                    _ => "ROUNDTRIP FAILED",
                }
            } else if e["on_cone"].as_bool() == Some(true) {
                "on cone"
            } else {
                "OFF CONE"
            };
            println!("#{} word length {}: {}", e["index"], word_len, status);
        }
    }
    eprintln!("{samples} samples from {cone} for {case}");
    Ok(pass)
}

fn lattice_lines(surface: &str, json: bool) -> Result<bool, Failure> {
    match surface {
        "dp1" => {
            let s = DegreeOne::new();
            let lines = s.lines();
            let pass = lines.len() == 240
                && lines
                    .iter()
                    .all(|l| s.pair(l, l) == chevalley::rat::qi(-1) && s.degree(l) == chevalley::rat::qi(1));
            if json {
                let doc = json!({
                    "command": "lattice lines",
                    "surface": "dp1",
                    "count": lines.len(),
                    "self_intersection": -1,
                    "degree": 1,
                    "lines": lines.iter().enumerate()
                        .map(|(i, l)| json!({"index": i, "root": l.lam.0}))
                        .collect::<Vec<_>>(),
                    "pass": pass,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            } else {
                for (i, l) in lines.iter().enumerate() {
                    println!("L{i}  -K + {:?}", l.lam.0);
                }
            }
            eprintln!("{} lines on the degree one surface", lines.len());
            Ok(pass)
        }
        "dp2" => {
            let s = DegreeTwo::new();
            let lines = s.lines();
            let pass = lines.len() == 56
                && lines.iter().all(|l| {
                    s.pair(l, l) == chevalley::rat::qi(-1) && s.degree(l) == chevalley::rat::qi(1)
                });
            let partner_of = |i: usize| {
                let p = s.line_partner(&lines[i]);
                lines.iter().position(|o| *o == p)
            };
            if json {
                let doc = json!({
                    "command": "lattice lines",
                    "surface": "dp2",
                    "count": lines.len(),
                    "self_intersection": -1,
                    "degree": 1,
                    "lines": lines.iter().enumerate()
                        .map(|(i, l)| json!({
                            "index": i,
                            "weight": l.w,
                            "level": l.m,
                            "partner": partner_of(i),
                        }))
                        .collect::<Vec<_>>(),
                    "pass": pass,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
            } else {
                for (i, l) in lines.iter().enumerate() {
                    match partner_of(i) {
                        Some(j) => println!("L{i}  weight {:?}, partner L{j}", l.w),
                        None => println!("L{i}  weight {:?}, partner missing", l.w),
                    }
                }
            }
            eprintln!("{} lines on the degree two surface", lines.len());
            Ok(pass)
        }
        other => Err(Failure::Usage(format!(
            "unknown surface {other:?}; expected dp1 or dp2"
        ))),
    }
}

fn lattice_dictionary(seed: u64, json: bool) -> Result<bool, Failure> {
    let bd = Blowdown::new();
    let entries: Vec<Value> = bd
        .big
        .rs
        .roots
        .iter()
        .map(|beta| {
            let img = bd.image(beta);
            json!({
                "root": beta.0,
                "grade": bd.grade(beta),
                "weight": img.w,
                "level": img.m,
                "multiplicity": bd.multiplicity(beta),
            })
        })
        .collect();
    let report = Report::new("lattice dictionary", None, Some(seed), picard::lattice_checks(seed));
    let pass = report.pass;
    if json {
        let mut doc = serde_json::to_value(&report).expect("serializes");
        doc["entries"] = Value::Array(entries);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    } else {
        let mut by_grade = std::collections::BTreeMap::new();
        for beta in &bd.big.rs.roots {
            *by_grade.entry(bd.grade(beta)).or_insert(0usize) += 1;
        }
        for (g, n) in by_grade {
            println!("grade {g:2}: {n} lines");
        }
        print!("{}", report.to_text());
    }
    eprintln!("dictionary over {} lines", entries_len(&bd));
    Ok(pass)
}

fn entries_len(bd: &Blowdown) -> usize {
    bd.big.rs.roots.len()
}
