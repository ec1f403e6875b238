use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use galekit::cone::{is_face, is_strongly_convex, relint_contains, HRep};
use galekit::fan::{is_complete, is_fan_data, is_polytopal, Certificate, FanData, Verdict};
use galekit::gale::{gale_dual, VectorConfiguration};
use galekit::lvmb::{e_of_point, is_lvm, lvmb_fan_crosscheck, validate_lvmb};
use galekit::polyhedron::{gkz_chamber, normal_fan, Chamber};
use galekit::quadrics::{build_quadrics, complex_from_delta, euler_characteristic_rk, link_system, Flavor, QuadricSystem};
use galekit::retract::{Coordinate, MomentAnglePoint, Retractor};
use galekit::snf::smith_normal_form;
use galekit::toric::{
    ample_contains, cartier_multiple, class_group, is_cartier, is_nonsingular, nef_cone, projective_witness,
    stabilizer_order, LatticeData, CARTIER_SEARCH_LIMIT,
};
use galekit::{IndexSet, Rat};

mod io;

use io::*;

#[derive(Parser)]
#[command(name = "galekit", version, about = "Exact Gale duality, fans, toric and moment-angle computations")]
struct Cli {
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct FanArgs {
    /// Configuration A: {"dim", "columns", "lattice"?}.
    #[arg(long)]
    a: PathBuf,
    /// Simplicial complex file (1-based facets).
    #[arg(long)]
    complex: Option<PathBuf>,
    /// General set family: "sets" literally, or the face closure of "maximal".
    #[arg(long)]
    general: Option<PathBuf>,
    /// Gale dual whose coordinates are used for Γ-side output.
    #[arg(long)]
    gamma: Option<PathBuf>,
}

#[derive(clap::Args)]
struct FacesArgs {
    /// Configuration A: {"dim", "columns", "lattice"?}.
    #[arg(long)]
    a: PathBuf,
    /// Family file: "sets", or "maximal" closed under faces.
    #[arg(long)]
    faces: PathBuf,
    /// Gale dual whose coordinates are used for Γ-side output.
    #[arg(long)]
    gamma: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical Gale dual of a configuration.
    Gale { config: PathBuf },
    /// Decide whether the collection is a fan.
    CheckFan(FanArgs),
    /// Decide completeness of a fan.
    Complete(FanArgs),
    /// Find δ making the fan a normal fan.
    Polytopal(FanArgs),
    /// Normal fan of {w : ⟨a_i, w⟩ + b_i ≥ 0}.
    NormalFan {
        /// Configuration file with an extra "b" array.
        #[arg(long)]
        poly: PathBuf,
    },
    /// GKZ chamber of δ.
    Gkz {
        #[arg(long)]
        gamma: PathBuf,
        /// δ as comma-separated rationals, e.g. 1,2 or 1/2,-3.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Nef cone of a complete fan.
    Nef(FacesArgs),
    /// Whether δ is ample.
    Ample {
        #[command(flatten)]
        f: FacesArgs,
        /// δ as comma-separated rationals, e.g. 1,2 or 1/2,-3.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Whether the complete fan is projective.
    Projective(FacesArgs),
    /// Whether Σ b_i D_i is Cartier, and its smallest Cartier multiple.
    Cartier {
        #[command(flatten)]
        f: FacesArgs,
        /// Integer divisor coefficients, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Quadric system for (Γ, δ).
    Quadrics {
        #[arg(long)]
        gamma: PathBuf,
        /// δ as comma-separated rationals, e.g. 1,2 or 1/2,-3.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        /// Render |z_i|^2 instead of x_i^2.
        #[arg(long)]
        hermitian: bool,
    },
    /// Link system of a point configuration.
    Link {
        /// {"dim", "points"}.
        #[arg(long)]
        points: PathBuf,
        /// Render |z_i|^2 instead of x_i^2.
        #[arg(long)]
        hermitian: bool,
    },
    /// Validate an LVMB datum and cross-check it as a complete fan.
    Lvmb {
        /// {"m", "k", "E", "points"} with 1-based sets in E.
        #[arg(long)]
        datum: PathBuf,
    },
    /// Decide whether an LVMB datum is LVM.
    IsLvm {
        /// {"m", "k", "E", "points"} with 1-based sets in E.
        #[arg(long)]
        datum: PathBuf,
    },
    /// Euler characteristic of the real moment-angle complex.
    Euler {
        #[arg(long)]
        complex: PathBuf,
    },
    /// Retract a point onto R_K (or Z_K with --complex-coords, entries "re:im").
    Retract {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        gamma: Option<PathBuf>,
        /// Coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Read the point as complex numbers.
        #[arg(long)]
        complex_coords: bool,
    },
    /// Smith normal form of an integer matrix.
    Snf { zmat: PathBuf },
    /// Stabiliser order at a point with zero set I.
    Stabilizer {
        #[arg(long)]
        gamma: PathBuf,
        /// 1-based zero set, comma separated (may be empty).
        #[arg(long, default_value = "")]
        i: String,
    },
}

/// A report plus whether the answer is affirmative.
type Report = (bool, Map<String, Value>);

fn with_gamma(fd: FanData, gamma: Option<&PathBuf>) -> CliResult<FanData> {
    match gamma {
        Some(p) => Ok(fd.with_gamma(read_config(p)?.config)?),
        None => Ok(fd),
    }
}

fn fan_from(args: &FanArgs) -> CliResult<(FanData, bool)> {
    let cfg = read_config(&args.a)?;
    let fd = fan_data(&cfg.config, args.complex.as_deref(), args.general.as_deref())?;
    Ok((with_gamma(fd, args.gamma.as_ref())?, cfg.lattice))
}

fn faces_from(args: &FacesArgs) -> CliResult<FanData> {
    let cfg = read_config(&args.a)?;
    let fd = fan_data(&cfg.config, None, Some(&args.faces))?;
    with_gamma(fd, args.gamma.as_ref())
}

fn certificate_json(c: &Certificate) -> Value {
    match c {
        Certificate::Overlap { first, second, witness } => {
            json!({"kind": "overlap", "first": set_json(*first), "second": set_json(*second), "witness": vec_json(witness)})
        }
        Certificate::NotStronglyConvex { set } => json!({"kind": "not_strongly_convex", "set": set_json(*set)}),
        Certificate::NotClosed { set, face } => json!({"kind": "not_closed", "set": set_json(*set), "face": set_json(*face)}),
    }
}

fn verify_certificate(fd: &FanData, c: &Certificate) -> CliResult<()> {
    let ok = match c {
        Certificate::Overlap { first, second, witness } => {
            first != second && relint_contains(&fd.cone_a(*first), witness) && relint_contains(&fd.cone_a(*second), witness)
        }
        Certificate::NotStronglyConvex { set } => !is_strongly_convex(&fd.cone_a(*set)),
        Certificate::NotClosed { set, face } => {
            !fd.members().contains(face) && is_face(&fd.cone_a(*face), &fd.cone_a(*set))
        }
    };
    if ok {
        Ok(())
    } else {
        Err(CliError::certificate("not-a-fan certificate failed re-verification"))
    }
}

fn verify_delta(fd: &FanData, delta: &[Rat]) -> CliResult<()> {
    if fd.members().iter().all(|&s| relint_contains(&fd.cone_gamma_hat(s), delta)) {
        Ok(())
    } else {
        Err(CliError::certificate("δ is not in every relative interior"))
    }
}

fn chamber_json(c: &Chamber) -> CliResult<Map<String, Value>> {
    let HRep { equations, inequalities, .. } = &c.hrep;
    if !c.cone.generators().iter().all(|g| c.hrep.satisfied_by(g)) {
        return Err(CliError::certificate("generator violates the constraints"));
    }
    let mut o = Map::new();
    o.insert("generators".into(), vecs_json(c.cone.generators()));
    o.insert("equations".into(), vecs_json(equations));
    o.insert("inequalities".into(), vecs_json(inequalities));
    Ok(o)
}

fn quadrics_json(sys: &QuadricSystem) -> CliResult<Map<String, Value>> {
    let mut o = Map::new();
    o.insert("gamma".into(), vecs_json(&sys.gamma.matrix().rows_vec()));
    o.insert("delta".into(), vec_json(&sys.delta));
    o.insert("nondegenerate".into(), json!(sys.nondegenerate));
    o.insert("equations".into(), json!(sys.equations()));
    o.insert("flavor".into(), json!(if sys.flavor == Flavor::Real { "real" } else { "hermitian" }));
    if sys.nondegenerate {
        o.insert("complex".into(), complex_json(&complex_from_delta(&sys.gamma, &sys.delta)?));
    }
    Ok(o)
}

fn flavor(hermitian: bool) -> Flavor {
    if hermitian {
        Flavor::Hermitian
    } else {
        Flavor::Real
    }
}

fn retract_json<C: Coordinate>(p: &MomentAnglePoint<C>, render: impl Fn(&C) -> Value) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("coords".into(), Value::Array(p.coords.iter().map(render).collect()));
    o.insert("zero_set".into(), set_json(p.zero_set));
    o.insert("cone".into(), set_json(p.cone));
    o
}

fn run(cmd: &Command) -> CliResult<Report> {
    let mut o = Map::new();
    match cmd {
        Command::Gale { config } => {
            let cfg = read_config(config)?.config;
            let dual = gale_dual(&cfg);
            let name = if cfg.label().is_empty() { String::new() } else { format!("{} dual", cfg.label()) };
            let Value::Object(map) = config_json(&dual.with_label(name)) else { unreachable!() };
            Ok((true, map))
        }
        Command::CheckFan(args) => {
            let (fd, lattice) = fan_from(args)?;
            let verdict = is_fan_data(&fd)?;
            o.insert("m".into(), json!(fd.m()));
            o.insert("n".into(), json!(fd.n()));
            match &verdict {
                Verdict::Fan => {
                    o.insert("verdict".into(), json!("fan"));
                    if lattice {
                        let ld = LatticeData::new(fd.a())?;
                        o.insert("nonsingular".into(), json!(is_nonsingular(&fd, &ld)?));
                        let (free, torsion) = class_group(&ld);
                        let t: Vec<String> = torsion.iter().map(ToString::to_string).collect();
                        o.insert("class_group".into(), json!({"free_rank": free, "torsion": t}));
                    }
                }
                Verdict::NotFan(c) => {
                    verify_certificate(&fd, c)?;
                    o.insert("verdict".into(), json!("not_fan"));
                    o.insert("certificate".into(), certificate_json(c));
                }
            }
            Ok((verdict.is_fan(), o))
        }
        Command::Complete(args) => {
            let (fd, _) = fan_from(args)?;
            let complete = is_complete(&fd)?;
            o.insert("complete".into(), json!(complete));
            Ok((complete, o))
        }
        Command::Polytopal(args) => {
            let (fd, _) = fan_from(args)?;
            let delta = is_polytopal(&fd)?;
            if let Some(d) = &delta {
                verify_delta(&fd, d)?;
            }
            o.insert("delta".into(), delta.as_deref().map_or(Value::Null, vec_json));
            o.insert("verdict".into(), json!(if delta.is_some() { "polytopal" } else { "none" }));
            Ok((delta.is_some(), o))
        }
        Command::NormalFan { poly } => {
            let p = read_polyhedron(poly)?;
            let (fd, generic) = normal_fan(&p)?;
            o.insert("generic".into(), json!(generic));
            o.insert("maximal".into(), sets_json(&fd.maximal()));
            o.insert("members".into(), json!(fd.members().len()));
            o.insert("delta".into(), vec_json(&p.delta(fd.gamma())));
            o.insert("gamma".into(), config_json(fd.gamma()));
            o.insert("bounded".into(), json!(p.is_bounded()));
            if let Some(k) = fd.complex() {
                o.insert("dual_complex".into(), complex_json(k));
            }
            Ok((true, o))
        }
        Command::Gkz { gamma, delta } => {
            let g = read_config(gamma)?.config;
            let d = parse_rat_list(delta)?;
            let c = gkz_chamber(&g, &d)?;
            if !relint_contains(&c.cone, &d) {
                return Err(CliError::certificate("δ is not in the relative interior of its chamber"));
            }
            Ok((true, chamber_json(&c)?))
        }
        Command::Nef(f) => {
            let fd = faces_from(f)?;
            Ok((true, chamber_json(&nef_cone(&fd)?)?))
        }
        Command::Ample { f, delta } => {
            let fd = faces_from(f)?;
            let ample = ample_contains(&fd, &parse_rat_list(delta)?)?;
            o.insert("ample".into(), json!(ample));
            Ok((ample, o))
        }
        Command::Projective(f) => {
            let fd = faces_from(f)?;
            let delta = projective_witness(&fd)?;
            if let Some(d) = &delta {
                verify_delta(&fd, d)?;
            }
            o.insert("projective".into(), json!(delta.is_some()));
            o.insert("delta".into(), delta.as_deref().map_or(Value::Null, vec_json));
            Ok((delta.is_some(), o))
        }
        Command::Cartier { f, b } => {
            let fd = faces_from(f)?;
            let ld = LatticeData::new(fd.a())?;
            let b = parse_int_list(b)?;
            let cartier = is_cartier(&fd, &ld, &b)?;
            let multiple = cartier_multiple(&fd, &ld, &b, CARTIER_SEARCH_LIMIT)?;
            if cartier != (multiple == Some(1)) {
                return Err(CliError::certificate("Cartier search disagrees with the direct test"));
            }
            o.insert("cartier".into(), json!(cartier));
            o.insert("smallest_multiple".into(), json!(multiple));
            o.insert("search_limit".into(), json!(CARTIER_SEARCH_LIMIT));
            Ok((cartier, o))
        }
        Command::Quadrics { gamma, delta, hermitian } => {
            let g = read_config(gamma)?.config;
            let sys = build_quadrics(&g, &parse_rat_list(delta)?, flavor(*hermitian))?;
            Ok((sys.nondegenerate, quadrics_json(&sys)?))
        }
        Command::Link { points, hermitian } => {
            let sys = link_system(&read_points(points)?, flavor(*hermitian))?;
            Ok((sys.nondegenerate, quadrics_json(&sys)?))
        }
        Command::Lvmb { datum } => {
            let d = read_datum(datum)?;
            let r = validate_lvmb(&d);
            let agreed = lvmb_fan_crosscheck(&d)?;
            o.insert("minimal_gen".into(), json!(r.minimal_gen));
            o.insert("imbrication".into(), json!(r.imbrication));
            o.insert("substitute_existence".into(), json!(r.substitute_existence));
            o.insert("lvmb".into(), json!(r.all()));
            o.insert("complete_fan".into(), json!(agreed));
            Ok((r.all(), o))
        }
        Command::IsLvm { datum } => {
            let d = read_datum(datum)?;
            let v = is_lvm(&d)?;
            if let Some(p) = &v.center {
                if &e_of_point(&d, p) != d.e() {
                    return Err(CliError::certificate("centre does not reproduce E"));
                }
            }
            o.insert("lvm".into(), json!(v.lvm));
            o.insert("center".into(), v.center.as_deref().map_or(Value::Null, vec_json));
            o.insert("origin_lvm".into(), json!(v.origin_lvm));
            Ok((v.lvm, o))
        }
        Command::Euler { complex } => {
            let k = read_complex(complex)?;
            o.insert("euler_characteristic".into(), json!(euler_characteristic_rk(&k) as i64));
            o.insert("f_vector".into(), json!(k.f_vector()));
            Ok((true, o))
        }
        Command::Retract { a, complex, gamma, point, complex_coords } => {
            let cfg = read_config(a)?.config;
            let fd = with_gamma(galekit::fan::FanData::simplicial(read_complex(complex)?, cfg)?, gamma.as_ref())?;
            fd.ensure_fan()?;
            let r = Retractor::new(&fd)?;
            let map = if *complex_coords {
                let z = parse_complex_list(point)?;
                let p = r.retract(&z)?;
                retract_json(&p, |c: &Complex64| json!([float_json(c.re), float_json(c.im)]))
            } else {
                let x = parse_float_list(point)?;
                retract_json(&r.retract(&x)?, |c: &f64| float_json(*c))
            };
            Ok((true, map))
        }
        Command::Snf { zmat } => {
            let m = read_zmat(zmat)?;
            let snf = smith_normal_form(&m);
            if snf.u.mul(&m).mul(&snf.v) != snf.s {
                return Err(CliError::certificate("U·M·V differs from S"));
            }
            o.insert("u".into(), zmat_json(&snf.u));
            o.insert("s".into(), zmat_json(&snf.s));
            o.insert("v".into(), zmat_json(&snf.v));
            o.insert("divisors".into(), json!(snf.divisors().iter().map(ToString::to_string).collect::<Vec<_>>()));
            Ok((true, o))
        }
        Command::Stabilizer { gamma, i } => {
            let g: VectorConfiguration = read_config(gamma)?.config;
            let set: IndexSet = parse_index_list(i, g.len())?;
            let order = stabilizer_order(&g, set)?;
            o.insert("zero_set".into(), set_json(set));
            o.insert("order".into(), json!(order.to_string()));
            Ok((true, o))
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Gale { .. } => "gale",
        Command::CheckFan(_) => "check-fan",
        Command::Complete(_) => "complete",
        Command::Polytopal(_) => "polytopal",
        Command::NormalFan { .. } => "normal-fan",
        Command::Gkz { .. } => "gkz",
        Command::Nef(_) => "nef",
        Command::Ample { .. } => "ample",
        Command::Projective(_) => "projective",
        Command::Cartier { .. } => "cartier",
        Command::Quadrics { .. } => "quadrics",
        Command::Link { .. } => "link",
        Command::Lvmb { .. } => "lvmb",
        Command::IsLvm { .. } => "is-lvm",
        Command::Euler { .. } => "euler",
        Command::Retract { .. } => "retract",
        Command::Snf { .. } => "snf",
        Command::Stabilizer { .. } => "stabilizer",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (code, mut report) = match run(&cli.command) {
        Ok((yes, map)) => (if yes { 0 } else { 1 }, map),
        Err(e) => {
            eprintln!("galekit: {}: {}", e.code, e.detail);
            let mut map = Map::new();
            map.insert("error".into(), json!(e.code));
            map.insert("detail".into(), json!(e.detail));
            (2, map)
        }
    };
    report.insert("command".into(), json!(command_name(&cli.command)));
    if cli.timings {
        report.insert("timings".into(), json!({"elapsed_ms": start.elapsed().as_secs_f64() * 1e3}));
    }
    let text = serde_json::to_string_pretty(&Value::Object(report)).expect("serializable");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}
