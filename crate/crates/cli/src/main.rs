use clap::{Args, Parser, Subcommand};
use lowgrowth::flat::{flat_extension, translate_qe_to_eq, FlatSignature};
use lowgrowth::group::{composition_series, named_family, named_group, sylow_classification, FiniteGroup, GroupJson};
use lowgrowth::membership::{
    growth_experiment, in_quasivariety, in_variety_of_flat, predicted_complexity, witness_equation_flat,
    witness_quasi_equation, write_growth_csv, FlatCheck, Verdict,
};
use lowgrowth::model::{satisfies_quasiequation, Equation, FiniteAlgebra, QuasiEquation, Satisfaction, Signature};
use lowgrowth::presentation::{
    build_short_presentation, translate_signature, verify_presents, Presentation, PresentationSignature, SimpleCatalog,
};
use lowgrowth::Budgets;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lowgrowth",
    version,
    about = "Short presentations, quasivariety witnesses and flat-extension equations"
)]
struct Cli {
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest group order to build.
    #[arg(long, global = true)]
    budget_max_order: Option<usize>,
    /// Node cap for homomorphism and quasi-equation searches.
    #[arg(long, global = true)]
    budget_hom_nodes: Option<u64>,
    /// Cap on |A|^vars for exhaustive equation checks.
    #[arg(long, global = true)]
    budget_assignments: Option<u64>,
    /// Coset cap for Todd-Coxeter (default 20 times the group order).
    #[arg(long, global = true)]
    budget_max_cosets: Option<usize>,
    /// Largest algebra for congruence computations.
    #[arg(long, global = true)]
    budget_algebra_size: Option<usize>,
    /// Longest equation the equation search will enumerate.
    #[arg(long, global = true)]
    budget_equation_length: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budgets, String> {
        let mut b = Budgets::default();
        if let Some(v) = self.budget_max_order {
            b.max_group_order = v;
        }
        if let Some(v) = self.budget_hom_nodes {
            b.hom_nodes = v;
        }
        if let Some(v) = self.budget_assignments {
            b.assignments = v;
        }
        if let Some(v) = self.budget_max_cosets {
            b.max_cosets = Some(v);
        }
        if let Some(v) = self.budget_algebra_size {
            b.algebra_size = v;
        }
        if let Some(v) = self.budget_equation_length {
            b.equation_length = v;
        }
        let positive = [b.max_group_order as u64, b.hom_nodes, b.assignments, b.algebra_size as u64];
        if positive.contains(&0) || b.max_cosets == Some(0) {
            return Err("budgets must be positive".into());
        }
        Ok(b)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Describe a group: order, exponent, composition factors, table.
    Group {
        /// Named spec (e.g. `product:(quaternion,cyclic:3)`) or group JSON file.
        group: String,
        /// Print the group as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Build the short presentation along the composition series.
    Present {
        group: String,
        /// Rewrite into a smaller signature: `*,1`, `*,inv` or `*`.
        #[arg(long)]
        signature: Option<String>,
        /// Also print the stage metrics as JSON.
        #[arg(long)]
        metrics: bool,
    },
    /// Check that a presentation presents a group (built one if none given).
    Verify {
        #[arg(long)]
        group: String,
        /// Presentation file in `gens: a b` form.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Comma-separated generator images, required with --presentation.
        #[arg(long, value_delimiter = ',')]
        images: Vec<usize>,
    },
    /// Check an equation or quasi-equation on an algebra or group.
    Check {
        /// Algebra JSON, group JSON, or named group spec.
        #[arg(long)]
        algebra: String,
        #[arg(long, conflicts_with = "quasi", required_unless_present = "quasi")]
        equation: Option<String>,
        #[arg(long)]
        quasi: Option<String>,
    },
    /// Decide H in SP(G), or B in the variety of the flat extension of G.
    Membership {
        #[arg(long, required_unless_present = "algebra")]
        h: Option<String>,
        /// Flat-signature algebra JSON, instead of --h.
        #[arg(long, conflicts_with = "h")]
        algebra: Option<String>,
        #[arg(long)]
        g: String,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Emit the quasi-equation (and with --flat the equation) separating H from G.
    Witness {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        flat: bool,
    },
    /// Print the flat extension of a group as algebra JSON.
    Flatten {
        group: String,
        /// `*,inv,&`, `*,inv,&,1` or `*,&`.
        #[arg(long, default_value = "*,inv,&,1")]
        signature: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a group quasi-equation into an equation over flat extensions.
    Translate {
        #[arg(long)]
        quasi: String,
        #[arg(long)]
        d: usize,
        /// Fail instead of padding uncovered variables.
        #[arg(long)]
        no_pad: bool,
    },
    /// Witness lengths for a family of groups against G, as CSV.
    Growth {
        #[arg(long)]
        g: String,
        /// `cyclic2powers:a..b`, `dihedral:a..b`, or `;`-separated specs.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sylow subgroups and the predicted complexity class.
    Sylow { group: String },
}

enum Outcome {
    Holds(String),
    Fails(String),
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_group(arg: &str, budgets: &Budgets) -> Result<FiniteGroup, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let json: GroupJson = serde_json::from_value(read_json(path)?).map_err(|e| format!("{arg}: {e}"))?;
        return FiniteGroup::from_json(&json).map_err(|e| format!("{arg}: {e}"));
    }
    named_group(arg, budgets.max_group_order).map_err(|e| e.to_string())
}

fn load_algebra(arg: &str, budgets: &Budgets) -> Result<FiniteAlgebra, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let json = read_json(path)?;
        if json.get("ops").is_some() {
            return FiniteAlgebra::from_json(&json).map_err(|e| format!("{arg}: {e}"));
        }
    }
    let g = load_group(arg, budgets)?;
    FiniteAlgebra::from_group(&g, &Signature::group()).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let budgets = cli.budgets.resolve()?;
    let err = |e: &dyn std::fmt::Display| e.to_string();
    match cli.command {
        Command::Group { group, json } => {
            let g = load_group(&group, &budgets)?;
            if json {
                return Ok(Outcome::Holds(serde_json::to_string(&g.to_json()).map_err(|e| err(&e))?));
            }
            let series = composition_series(&g);
            let factors: Vec<String> = series.factors.iter().map(|f| f.order().to_string()).collect();
            Ok(Outcome::Holds(format!(
                "label: {}\norder: {}\nabelian: {}\nexponent: {}\ncomposition factors: {}",
                g.label(),
                g.order(),
                g.is_abelian(),
                g.exponent(),
                factors.join(" ")
            )))
        }
        Command::Present { group, signature, metrics } => {
            let g = load_group(&group, &budgets)?;
            let sp = build_short_presentation(&g, &mut SimpleCatalog::new(), budgets.hom_nodes).map_err(|e| err(&e))?;
            let pres = match signature {
                Some(s) => {
                    let target: PresentationSignature = s.parse().map_err(|e| err(&e))?;
                    translate_signature(&sp.presentation, target).map_err(|e| err(&e))?
                }
                None => sp.presentation.clone(),
            };
            let images: Vec<String> = sp.images.iter().map(usize::to_string).collect();
            let mut out = format!("{pres}images: {}\ntotal length: {}", images.join(","), pres.total_length());
            if metrics {
                out.push('\n');
                out.push_str(&serde_json::to_string(&sp.metrics).map_err(|e| err(&e))?);
            }
            Ok(Outcome::Holds(out))
        }
        Command::Verify { group, presentation, images } => {
            let g = load_group(&group, &budgets)?;
            let (pres, images) = match presentation {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    (Presentation::parse(&text).map_err(|e| err(&e))?, images)
                }
                None => {
                    let sp = build_short_presentation(&g, &mut SimpleCatalog::new(), budgets.hom_nodes)
                        .map_err(|e| err(&e))?;
                    (sp.presentation, sp.images)
                }
            };
            let v = verify_presents(&pres, &images, &g, budgets.cosets_for(g.order())).map_err(|e| err(&e))?;
            let text = format!(
                "relations hold: {}\ngenerates: {}\npresented order: {}\ntarget order: {}",
                v.relations_hold, v.generates, v.presented_order, v.target_order
            );
            Ok(if v.presents() { Outcome::Holds(format!("{text}\nverified")) } else { Outcome::Fails(text) })
        }
        Command::Check { algebra, equation, quasi } => {
            let a = load_algebra(&algebra, &budgets)?;
            let sig = a.signature();
            let (q, cap) = match (equation, quasi) {
                (Some(e), _) => {
                    (QuasiEquation::from(Equation::parse(&e, &sig).map_err(|e| err(&e))?), budgets.assignments)
                }
                (None, Some(q)) => (QuasiEquation::parse(&q, &sig).map_err(|e| err(&e))?, budgets.hom_nodes),
                (None, None) => return Err("give --equation or --quasi".into()),
            };
            match satisfies_quasiequation(&a, &q, cap).map_err(|e| err(&e))? {
                Satisfaction::Holds => Ok(Outcome::Holds("holds".into())),
                Satisfaction::Fails(at) => Ok(Outcome::Fails(format!("fails at {at}"))),
            }
        }
        Command::Membership { h, algebra, g, json } => {
            let g = load_group(&g, &budgets)?;
            let h = h.map(|h| load_group(&h, &budgets)).transpose()?;
            let verdict = match (&h, algebra) {
                (Some(h), _) => in_quasivariety(h, &g, budgets.hom_nodes).map_err(|e| err(&e))?,
                (None, Some(b)) => {
                    let b = FiniteAlgebra::from_json(&read_json(Path::new(&b))?).map_err(|e| err(&e))?;
                    in_variety_of_flat(&b, &g, &budgets).map_err(|e| err(&e))?
                }
                (None, None) => return Err("give --h or --algebra".into()),
            };
            if json {
                let text = serde_json::to_string(&verdict.to_json()).map_err(|e| err(&e))?;
                return Ok(if verdict.is_member() { Outcome::Holds(text) } else { Outcome::Fails(text) });
            }
            match (&verdict.verdict, &h) {
                (Verdict::InQuasivariety, _) => Ok(Outcome::Holds("member of SP(G)".into())),
                (Verdict::InVariety, _) => {
                    Ok(Outcome::Holds("member of the variety of the flat extension of G".into()))
                }
                (Verdict::NotInQuasivariety { witness }, Some(h)) => {
                    let w = witness_quasi_equation(&g, h, &budgets).map_err(|e| err(&e))?;
                    Ok(Outcome::Fails(format!(
                        "not in SP(G)\nwitness element: {witness}\nquasi-equation: {}\nfails on H at: {}",
                        w.quasi_equation, w.falsifying
                    )))
                }
                (Verdict::NotInQuasivariety { witness }, None) => {
                    Ok(Outcome::Fails(format!("not in SP(G)\nwitness element: {witness}")))
                }
                (Verdict::NotInVariety { witness, reason }, _) => Ok(Outcome::Fails(format!(
                    "not in the variety\nwitness quotient: {}\nreason: {reason}",
                    witness.to_json()
                ))),
            }
        }
        Command::Witness { g, h, flat } => {
            let (g, h) = (load_group(&g, &budgets)?, load_group(&h, &budgets)?);
            if flat {
                let w = witness_equation_flat(&g, &h, &budgets).map_err(|e| err(&e))?;
                let check = match w.flat_g_check {
                    FlatCheck::Exhaustive => "checked exhaustively".to_string(),
                    FlatCheck::OverBudget { needed } => {
                        format!("not checked ({needed} assignments over budget)")
                    }
                };
                Ok(Outcome::Holds(format!(
                    "witness element: {}\nquasi-equation: {}\nequation: {}\nexponent: {}\nholds on flat G: {check}\nfails on flat H at: {}",
                    w.quasi.element, w.quasi.quasi_equation, w.equation, w.exponent, w.falsifying
                )))
            } else {
                let w = witness_quasi_equation(&g, &h, &budgets).map_err(|e| err(&e))?;
                Ok(Outcome::Holds(format!(
                    "witness element: {}\nquasi-equation: {}\nfails on H at: {}",
                    w.element, w.quasi_equation, w.falsifying
                )))
            }
        }
        Command::Flatten { group, signature, out } => {
            let g = load_group(&group, &budgets)?;
            let tag: FlatSignature = signature.parse()?;
            let text = serde_json::to_string(&flat_extension(&g, tag).algebra.to_json()).map_err(|e| err(&e))?;
            match out {
                Some(path) => {
                    std::fs::write(&path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
                    Ok(Outcome::Holds(format!("wrote {}", path.display())))
                }
                None => Ok(Outcome::Holds(text)),
            }
        }
        Command::Translate { quasi, d, no_pad } => {
            let q = QuasiEquation::parse(&quasi, &Signature::group()).map_err(|e| err(&e))?;
            let e = translate_qe_to_eq(&q, d, !no_pad).map_err(|e| err(&e))?;
            Ok(Outcome::Holds(e.to_string()))
        }
        Command::Growth { g, family, out } => {
            let g = load_group(&g, &budgets)?;
            let family = named_family(&family)
                .map_err(|e| err(&e))?
                .iter()
                .map(|s| load_group(s, &budgets))
                .collect::<Result<Vec<_>, _>>()?;
            let records = growth_experiment(&g, &family, &budgets).map_err(|e| err(&e))?;
            let mut buf = Vec::new();
            write_growth_csv(&records, &mut buf).map_err(|e| err(&e))?;
            let csv = String::from_utf8(buf).expect("CSV is UTF-8");
            match out {
                Some(path) => {
                    std::fs::write(&path, &csv).map_err(|e| format!("{}: {e}", path.display()))?;
                    Ok(Outcome::Holds(format!("wrote {} records to {}", records.len(), path.display())))
                }
                None => Ok(Outcome::Holds(csv.trim_end().to_string())),
            }
        }
        Command::Sylow { group } => {
            let g = load_group(&group, &budgets)?;
            let report = sylow_classification(&g);
            let mut lines: Vec<String> = report
                .subgroups
                .iter()
                .map(|s| format!("p={} order={} abelian={}", s.prime, s.elements.len(), s.is_abelian))
                .collect();
            lines.push(format!("nonabelian Sylow subgroup: {}", report.has_nonabelian_sylow));
            lines.push(format!("prediction: {}", predicted_complexity(&g)));
            Ok(Outcome::Holds(lines.join("\n")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Holds(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fails(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
