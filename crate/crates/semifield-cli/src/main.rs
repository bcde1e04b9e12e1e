//! Command-line front end: tower inspection, construction reports,
//! classification, automorphism groups, catalog generation and the
//! verification suite. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parameter errors.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use semifield::algebra::Family;
use semifield::autgroup::{
    family_automorphisms, identify_group, kn1_candidate_automorphisms, sandler_automorphisms,
    AutKind, Automorphism,
};
use semifield::catalog;
use semifield::classify::enumerate_classes;
use semifield::family::{division_criterion, FamilyParams};
use semifield::gf::FieldTower;
use semifield::sandler::SandlerParams;
use semifield::verify;

#[derive(Parser)]
#[command(name = "semifield", version, about = "Finite semifield constructions, classification and automorphism groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Describe a field tower
    Field(FieldCmd),
    /// Cyclic-construction reports
    Sandler {
        #[command(subcommand)]
        cmd: SandlerCmd,
    },
    /// Partition the twists of a tower into isomorphism classes
    Classify(ClassifyCmd),
    /// Automorphism group of an algebra given as a JSON descriptor
    Aut(AutCmd),
    /// Pair-construction reports
    Family(FamilyCmd),
    /// Catalog of algebras up to a maximum order
    Catalog(CatalogCmd),
    /// Run the verification suite
    Verify(VerifyCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct TowerArgs {
    /// Prime characteristic
    #[arg(long)]
    p: u64,
    /// Base field is F_{p^e}
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Explicit modulus polynomial in T, overriding the canonical choice
    #[arg(long)]
    modulus: Option<String>,
}

impl TowerArgs {
    fn build(&self, n: u32) -> Result<Arc<FieldTower>, semifield::Error> {
        let tower = match &self.modulus {
            Some(text) => {
                let poly = FieldTower::parse_modulus(self.p, text)?;
                FieldTower::with_modulus(self.p, self.e, n, poly)?
            }
            None => FieldTower::new(self.p, self.e, n)?,
        };
        Ok(Arc::new(tower))
    }
}

#[derive(Args)]
struct FieldCmd {
    #[command(flatten)]
    tower: TowerArgs,
    /// Extension degree of L over the base field
    #[arg(long)]
    n: u32,
}

#[derive(Subcommand)]
enum SandlerCmd {
    /// Invariant fingerprint of one cyclic-construction algebra
    Info(SandlerInfoCmd),
}

#[derive(Args)]
struct SandlerInfoCmd {
    #[command(flatten)]
    tower: TowerArgs,
    /// Extension degree of L over the base field
    #[arg(long)]
    n: u32,
    /// Twist element, e.g. "T" or "2T+1"
    #[arg(long)]
    a: String,
}

#[derive(Args)]
struct ClassifyCmd {
    #[command(flatten)]
    tower: TowerArgs,
    /// Extension degree (prime degrees get the closed-form count)
    #[arg(long)]
    r: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct AutCmd {
    /// JSON descriptor, e.g.
    /// {"tower":{"p":3,"e":1,"n":2},"kind":{"sandler":{"a":"T"}}}
    #[arg(long)]
    spec: String,
}

#[derive(Args)]
#[command(subcommand_negates_reqs = true)]
struct FamilyCmd {
    #[command(subcommand)]
    cmd: Option<FamilySub>,
    #[command(flatten)]
    tower: Option<TowerArgs>,
    /// Extension degree of L over the base field
    #[arg(long)]
    n: Option<u32>,
    /// Construction: hk, kn1, kn2 or kn3
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Which power of the tower generator plays sigma
    #[arg(long, default_value_t = 1)]
    sigma: u32,
}

#[derive(Subcommand)]
enum FamilySub {
    /// Sweep (eta, mu) and emit one CSV row per pair per construction
    Sweep(SweepCmd),
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    tower: TowerArgs,
    /// Extension degree of L over the base field
    #[arg(long)]
    n: u32,
    /// Restrict to one construction
    #[arg(long)]
    kind: Option<String>,
    /// Which power of the tower generator plays sigma
    #[arg(long, default_value_t = 1)]
    sigma: u32,
    /// Seed for the deterministic sample used above the full-sweep bound
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct CatalogCmd {
    /// Largest algebra order included
    #[arg(long, default_value_t = catalog::default_catalog_bound())]
    max_order: u128,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyCmd {
    /// Suite to run; `paper` checks every closed form against the oracles
    #[arg(long, default_value = "paper")]
    suite: String,
}

// JSON descriptor accepted by `aut --spec`.
#[derive(Deserialize)]
struct SpecDescriptor {
    tower: TowerDescriptor,
    kind: KindDescriptor,
}

#[derive(Deserialize)]
struct TowerDescriptor {
    p: u64,
    #[serde(default = "one")]
    e: u32,
    n: u32,
    modulus: Option<String>,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
enum KindDescriptor {
    #[serde(rename = "sandler")]
    Sandler { a: String },
    #[serde(rename = "family")]
    Family {
        name: String,
        eta: String,
        mu: String,
        #[serde(default = "one")]
        sigma: u32,
    },
}

fn main() -> ExitCode {
    // piping into head must not panic the process
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.cmd {
        Cmd::Field(args) => {
            let t = args.tower.build(args.n)?;
            let out = json!({
                "p": t.p(),
                "e": t.e(),
                "n": t.n(),
                "q": t.q(),
                "order": t.order(),
                "degree": t.degree(),
                "modulus": t.modulus_text(),
                "canonical_modulus": t.has_canonical_modulus(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Cmd::Sandler { cmd: SandlerCmd::Info(args) } => {
            let t = args.tower.build(args.n)?;
            let a = t.parse(&args.a)?;
            let pr = SandlerParams::new(t.clone(), a)?;
            let spec = pr.to_spec();
            let fp = spec.fingerprint();
            let prediction = pr.predicted_left_nucleus();
            let out = json!({
                "order": fp.order,
                "kind": fp.kind,
                "params": fp.params,
                "is_division": fp.is_division,
                "nucleus_dims": fp.nucleus_dims,
                "center_dim": fp.center_dim,
                "twist_period": prediction.s,
                "predicted_left_nucleus_dim": prediction.dim,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Cmd::Classify(args) => {
            let t = args.tower.build(args.r)?;
            let report = enumerate_classes(&t);
            let classes: Vec<_> = report
                .classes
                .iter()
                .map(|c| {
                    let pr = SandlerParams::new(t.clone(), c.representative.clone()).unwrap();
                    let maps = sandler_automorphisms(&pr);
                    let label = identify_group(&maps)
                        .map(|g| g.label.to_string())
                        .unwrap_or_else(|_| "-".to_string());
                    (c, maps.len(), label)
                })
                .collect();
            match args.format {
                Format::Json => {
                    let rows: Vec<_> = classes
                        .iter()
                        .map(|(c, aut, label)| {
                            json!({
                                "representative": t.render(&c.representative),
                                "size": c.size,
                                "members": c.members.iter().map(|m| t.render(m)).collect::<Vec<_>>(),
                                "aut_order": aut,
                                "group_label": label,
                            })
                        })
                        .collect();
                    let out = json!({
                        "p": t.p(),
                        "e": t.e(),
                        "r": t.n(),
                        "modulus": t.modulus_text(),
                        "class_count": report.class_count,
                        "formula_count": report.formula_count,
                        "classes": rows,
                    });
                    println!("{}", serde_json::to_string_pretty(&out)?);
                }
                Format::Csv => {
                    println!("representative,class_size,aut_order,group_label");
                    for (c, aut, label) in &classes {
                        println!("{},{},{},{}", t.render(&c.representative), c.size, aut, label);
                    }
                }
            }
        }
        Cmd::Aut(args) => {
            let desc: SpecDescriptor = serde_json::from_str(&args.spec)?;
            let t = TowerArgs {
                p: desc.tower.p,
                e: desc.tower.e,
                modulus: desc.tower.modulus.clone(),
            }
            .build(desc.tower.n)?;
            let out = match desc.kind {
                KindDescriptor::Sandler { a } => {
                    let a = t.parse(&a)?;
                    let pr = SandlerParams::new(t.clone(), a)?;
                    let maps = sandler_automorphisms(&pr);
                    aut_report(&t, &maps, true)?
                }
                KindDescriptor::Family { name, eta, mu, sigma } => {
                    let family = Family::from_name(&name)
                        .ok_or_else(|| format!("unknown construction `{name}`"))?;
                    let eta = t.parse(&eta)?;
                    let mu = t.parse(&mu)?;
                    let pr = FamilyParams::new(t.clone(), family, eta, mu, sigma)?;
                    if family == Family::Kn1 {
                        let maps = kn1_candidate_automorphisms(&pr)?;
                        aut_report(&t, &maps, false)?
                    } else {
                        let maps = family_automorphisms(&pr)?;
                        aut_report(&t, &maps, true)?
                    }
                }
            };
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Cmd::Family(args) => match args.cmd {
            Some(FamilySub::Sweep(sweep)) => run_sweep(sweep)?,
            None => {
                let kind = args.kind.ok_or("--kind is required")?;
                let family =
                    Family::from_name(&kind).ok_or_else(|| format!("unknown construction `{kind}`"))?;
                let tower_args = args.tower.ok_or("--p is required")?;
                let n = args.n.ok_or("--n is required")?;
                let t = tower_args.build(n)?;
                let eta = t.parse(&args.eta.ok_or("--eta is required")?)?;
                let mu = t.parse(&args.mu.ok_or("--mu is required")?)?;
                let pr = FamilyParams::new(t.clone(), family, eta, mu, args.sigma)?;
                let fp = pr.to_spec().fingerprint();
                println!("{}", serde_json::to_string_pretty(&serde_json::to_value(&fp)?)?);
            }
        },
        Cmd::Catalog(args) => {
            let rows = catalog::generate(args.max_order);
            match args.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows)?),
                Format::Csv => {
                    println!("order,kind,params,is_division,nuc_left,nuc_middle,nuc_right,center_dim,class_representative,aut_order,group_label");
                    for r in &rows {
                        println!(
                            "{},{},{},{},{},{},{},{},{},{},{}",
                            r.order,
                            r.kind,
                            r.params,
                            r.is_division,
                            r.nucleus_dims[0],
                            r.nucleus_dims[1],
                            r.nucleus_dims[2],
                            r.center_dim,
                            r.class_representative,
                            r.aut_order.map(|v| v.to_string()).unwrap_or_default(),
                            r.group_label.clone().unwrap_or_default(),
                        );
                    }
                }
            }
        }
        Cmd::Verify(args) => {
            if args.suite != "paper" {
                return Err(format!("unknown suite `{}`", args.suite).into());
            }
            let outcome = verify::paper_suite();
            for r in &outcome.reports {
                let status = if r.agree { "ok  " } else { "FAIL" };
                let space = r
                    .search_space
                    .map(|s| format!(" space={s}"))
                    .unwrap_or_default();
                println!(
                    "[{status}] {}: formula `{}` vs oracle `{}` ({} ms{space})",
                    r.claim, r.formula, r.oracle, r.elapsed_ms
                );
            }
            for note in &outcome.notes {
                println!("[note] {note}");
            }
            let failures = outcome.reports.iter().filter(|r| !r.agree).count();
            println!(
                "{} checks, {} disagreements",
                outcome.reports.len(),
                failures
            );
            if failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn aut_report(
    t: &Arc<FieldTower>,
    maps: &[Automorphism],
    complete: bool,
) -> Result<serde_json::Value, Box<dyn std::error::Error>> {
    let id = identify_group(maps)?;
    let witness = |a: &Automorphism| match &a.kind {
        AutKind::Sandler { power, l } => json!({ "power": power, "l": t.render(l) }),
        AutKind::Family { tau_power, b } => json!({ "tau": tau_power, "b": t.render(b) }),
    };
    let generators: Vec<_> = id
        .generators
        .iter()
        .map(|&g| {
            json!({
                "witness": witness(&maps[g]),
                "matrix": maps[g].matrix.rows_vec(),
            })
        })
        .collect();
    Ok(json!({
        "order": id.order,
        "label": id.label.to_string(),
        "abelian": id.abelian,
        "complete": complete,
        "signature": id.signature,
        "generators": generators,
        "witnesses": maps.iter().map(witness).collect::<Vec<_>>(),
    }))
}

fn run_sweep(args: SweepCmd) -> Result<(), Box<dyn std::error::Error>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    let t = args.tower.build(args.n)?;
    let families: Vec<Family> = match &args.kind {
        Some(kind) => vec![Family::from_name(kind)
            .ok_or_else(|| format!("unknown construction `{kind}`"))?],
        None => Family::CONSTRUCTIONS.to_vec(),
    };
    if args.sigma.is_multiple_of(t.n()) {
        return Err(semifield::Error::TrivialSigma.into());
    }
    let mut pairs: Vec<(u64, u64)> = (1..t.order())
        .flat_map(|eta| (0..t.order()).map(move |mu| (eta, mu)))
        .collect();
    // full sweep up to |L| = 16; deterministic sample beyond
    const SAMPLE: usize = 200;
    if t.order() > 16 && pairs.len() > SAMPLE {
        let total = pairs.len();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(SAMPLE);
        pairs.sort_unstable();
        println!("# sampled={SAMPLE} of={total} seed={}", args.seed);
    }
    println!("family,eta,mu,division,nuc_left,nuc_middle,nuc_right,aut_order");
    for (eta_idx, mu_idx) in pairs {
        let eta = t.from_index(eta_idx);
        let mu = t.from_index(mu_idx);
        let division = division_criterion(&t, args.sigma, &eta, &mu);
        for &family in &families {
            if !division {
                println!(
                    "{},{},{},false,,,,",
                    family.name(),
                    t.render(&eta),
                    t.render(&mu)
                );
                continue;
            }
            let pr = FamilyParams::new(t.clone(), family, eta.clone(), mu.clone(), args.sigma)?;
            let spec = pr.to_spec();
            let dims = spec.nucleus_dims();
            let aut = if family == Family::Kn1 {
                kn1_candidate_automorphisms(&pr)?.len()
            } else {
                family_automorphisms(&pr)?.len()
            };
            println!(
                "{},{},{},true,{},{},{},{}",
                family.name(),
                t.render(&eta),
                t.render(&mu),
                dims[0],
                dims[1],
                dims[2],
                aut
            );
        }
    }
    Ok(())
}
