use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cliffklein::catalog::{Arity, TestKind};
use cliffklein::clifford::{clifford_algebra, k_sphere_row, spinor_dimension};
use cliffklein::jorders::{j_order, ProjectiveKind};
use cliffklein::obstruct::format_exceptions;
use cliffklein::{
    check, hpq_admissible_table, s_sphere, scan_exceptions, Error, FamilyId, SpaceSpec, Verdict,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cliffklein",
    version,
    about = "K-theoretic obstructions to compact quotients of homogeneous spaces"
)]
struct Cli {
    /// Print the family identifiers with their spaces and domains.
    #[arg(long)]
    list_families: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rp,
    Cp,
    Hp,
}

impl From<Kind> for ProjectiveKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Rp => ProjectiveKind::Rp,
            Kind::Cp => ProjectiveKind::Cp,
            Kind::Hp => ProjectiveKind::Hp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Jtables,
    Sn,
    Hpq,
    Clifford,
    Kspheres,
}

#[derive(Subcommand)]
enum Command {
    /// Order of the J-image of the tautological line bundle over KP^n.
    Jorder {
        kind: Kind,
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate every obstruction test for one space.
    Check {
        family: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        q2: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Regenerate a reference table.
    Report {
        which: Report,
        /// Largest index to tabulate.
        #[arg(long)]
        max: Option<u64>,
        /// Field for the hpq table.
        #[arg(long, value_enum, default_value = "rp")]
        field: Kind,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// List the parameters in a box that no test excludes.
    Scan {
        family: String,
        #[arg(long)]
        pmax: u64,
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::Domain { .. } => 2,
        _ => 1,
    }
}

fn family(name: &str) -> Result<FamilyId, Error> {
    FamilyId::from_name(name).ok_or_else(|| {
        Error::InvalidArgument(format!("unknown family '{name}' (see --list-families)"))
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn list_families() -> String {
    let mut out = String::new();
    for f in FamilyId::ALL {
        let info = f.info();
        let column = if info.exceptions_proved {
            "exceptions proved"
        } else {
            "necessary condition"
        };
        let _ = writeln!(
            out,
            "{:<15} {:<55} {:<16} {column}",
            f.name(),
            f.space_name(),
            info.domain
        );
    }
    out
}

fn cmd_jorder(kind: Kind, n: u64, format: Format) -> Result<String, Error> {
    let k: ProjectiveKind = kind.into();
    let j = j_order(k, n)?;
    Ok(match format {
        Format::Text => format!("{j}\n"),
        Format::Json => pretty(&json!({ "kind": k, "n": n, "order": j })),
        Format::Csv => format!(
            "kind,n,value\n{},{n},{}\n",
            k.symbol().to_lowercase(),
            j.value()
        ),
    })
}

fn build_spec(
    f: FamilyId,
    p: Option<u64>,
    q: Option<u64>,
    q2: Option<u64>,
    n: Option<u64>,
) -> Result<SpaceSpec, Error> {
    let missing = |what: &str| Error::InvalidArgument(format!("{f} needs {what}"));
    match f.arity() {
        Arity::One => {
            if q.is_some() || q2.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "{f} takes a single parameter"
                )));
            }
            let value = match (p, n) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidArgument("give --n or --p, not both".into()))
                }
                (Some(v), None) | (None, Some(v)) => v,
                (None, None) => return Err(missing("--n")),
            };
            Ok(SpaceSpec::single(f, value))
        }
        Arity::Two => {
            if n.is_some() || q2.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "{f} takes --p and --q only"
                )));
            }
            Ok(SpaceSpec::pq(
                f,
                p.ok_or_else(|| missing("--p"))?,
                q.ok_or_else(|| missing("--q"))?,
            ))
        }
        Arity::Three => {
            if n.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "{f} takes --p, --q and --q2"
                )));
            }
            Ok(SpaceSpec::grass(
                f,
                p.ok_or_else(|| missing("--p"))?,
                q.ok_or_else(|| missing("--q"))?,
                q2.ok_or_else(|| missing("--q2"))?,
            ))
        }
    }
}

fn kind_id(kind: TestKind) -> &'static str {
    match kind {
        TestKind::RpRestriction => "rp-restriction",
        TestKind::CpRestriction => "cp-restriction",
        TestKind::HpRestriction => "hp-restriction",
        TestKind::HurwitzRadon => "hurwitz-radon",
        TestKind::RangeRule => "range-rule",
    }
}

fn verdict_csv(v: &Verdict) -> String {
    let mut out =
        String::from("family,p,q,q2,test,kind,base,n,linear,modulus,dividend,satisfied,outcome\n");
    for (i, r) in v.results.iter().enumerate() {
        let (base, n) = match r.test.j_order {
            Some(j) => (j.field.symbol().to_lowercase(), j.n.to_string()),
            None => (String::new(), String::new()),
        };
        let linear = r
            .form
            .as_ref()
            .map(|f| f.linear.to_string())
            .unwrap_or_default();
        let (modulus, dividend, satisfied) = match &r.condition {
            Some(c) => (
                c.modulus.to_string(),
                c.dividend.to_string(),
                c.satisfied.to_string(),
            ),
            None => Default::default(),
        };
        let outcome = if r.outcome.excludes() {
            "excludes"
        } else {
            "does-not-exclude"
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{base},{n},{linear},{modulus},{dividend},{satisfied},{outcome}",
            v.spec.family,
            v.spec.p,
            opt(v.spec.q),
            opt(v.spec.q2),
            i + 1,
            kind_id(r.test.kind),
        );
    }
    out
}

fn cmd_check(spec: SpaceSpec, format: Format) -> Result<String, Error> {
    let v = check(&spec)?;
    Ok(match format {
        Format::Text => v.to_string(),
        Format::Json => pretty(&json!({
            "verdict": v.headline(),
            "result": serde_json::to_value(&v).expect("serializable"),
        })),
        Format::Csv => verdict_csv(&v),
    })
}

fn cmd_scan(f: FamilyId, pmax: u64, qmax: Option<u64>, format: Format) -> Result<String, Error> {
    let qmax = match (f.arity(), qmax) {
        (Arity::One, _) => qmax.unwrap_or(1),
        (_, Some(q)) => q,
        (_, None) => return Err(Error::InvalidArgument(format!("{f} needs --qmax"))),
    };
    let found = scan_exceptions(f, pmax, qmax)?;
    Ok(match format {
        Format::Text => format_exceptions(&found) + "\n",
        Format::Json => pretty(&json!({
            "family": f,
            "pmax": pmax,
            "qmax": qmax,
            "exceptions": found,
        })),
        Format::Csv => {
            let mut out = String::from("family,p,q,q2\n");
            for s in &found {
                let _ = writeln!(out, "{},{},{},{}", f, s.p, opt(s.q), opt(s.q2));
            }
            out
        }
    })
}

/// A report as a header plus rows of plain cells.
struct Table {
    title: String,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}", w = *w))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("{}\n", self.title);
        out += &line(self.header.clone());
        for row in &self.rows {
            out += &line(row.iter().map(String::as_str).collect());
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",") + "\n";
        for row in &self.rows {
            out += &(row.join(",") + "\n");
        }
        out
    }

    fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), Value::String(c.clone())))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "title": self.title, "rows": rows })
    }
}

fn report_tables(which: Report, max: Option<u64>, field: Kind) -> Result<Vec<Table>, Error> {
    let tables = match which {
        Report::Jtables => {
            let mut tables = Vec::new();
            for (kind, default) in [
                (ProjectiveKind::Rp, 16),
                (ProjectiveKind::Cp, 11),
                (ProjectiveKind::Hp, 5),
            ] {
                let mut rows = Vec::new();
                for n in 1..=max.unwrap_or(default) {
                    let j = j_order(kind, n)?;
                    rows.push(vec![
                        n.to_string(),
                        j.value().to_string(),
                        j.factor_string(),
                    ]);
                }
                tables.push(Table {
                    title: format!("j_{}(n)", kind.symbol()),
                    header: vec!["n", "value", "factorization"],
                    rows,
                });
            }
            tables
        }
        Report::Sn => {
            let mut rows = Vec::new();
            for k in 1..=max.unwrap_or(36) / 4 {
                rows.push(vec![(4 * k).to_string(), s_sphere(4 * k)?.to_string()]);
            }
            vec![Table {
                title: "s_n = |J(S^n)| for n ≡ 0 (mod 4)".into(),
                header: vec!["n", "s_n"],
                rows,
            }]
        }
        Report::Hpq => {
            let k: ProjectiveKind = field.into();
            let rows = hpq_admissible_table(k, max.unwrap_or(16))?
                .into_iter()
                .map(|r| vec![r.q.to_string(), r.divisor.to_string()])
                .collect();
            vec![Table {
                title: format!(
                    "H^{{p,q}}_{}: compact quotients need divisor | p",
                    field_letter(k)
                ),
                header: vec!["q", "divisor"],
                rows,
            }]
        }
        Report::Clifford => {
            let mut rows = Vec::new();
            for n in 0..=max.unwrap_or(16) {
                let c = clifford_algebra(n);
                let spinor = if n == 0 {
                    String::new()
                } else {
                    spinor_dimension(n)?.to_string().replace(' ', "")
                };
                rows.push(vec![
                    n.to_string(),
                    c.base_ring(),
                    c.matrix_size.to_string(),
                    c.real_dimension().to_string(),
                    spinor,
                ]);
            }
            vec![Table {
                title: "Clifford algebras Cl_n = M(size, ring)".into(),
                header: vec!["n", "ring", "size", "dim", "spinor"],
                rows,
            }]
        }
        Report::Kspheres => {
            let mut rows = Vec::new();
            for n in 1..=max.unwrap_or(8) {
                let r = k_sphere_row(n)?;
                rows.push(vec![
                    n.to_string(),
                    r.ko.group.to_string(),
                    r.ku.group.to_string(),
                    r.ksp.group.to_string(),
                ]);
            }
            vec![Table {
                title: "reduced K-groups of spheres".into(),
                header: vec!["n", "KO", "KU", "KSp"],
                rows,
            }]
        }
    };
    Ok(tables)
}

fn field_letter(k: ProjectiveKind) -> &'static str {
    match k {
        ProjectiveKind::Rp => "R",
        ProjectiveKind::Cp => "C",
        ProjectiveKind::Hp => "H",
    }
}

fn cmd_report(
    which: Report,
    max: Option<u64>,
    field: Kind,
    format: Format,
) -> Result<String, Error> {
    if max == Some(0) {
        return Err(Error::InvalidArgument("--max must be at least 1".into()));
    }
    let tables = report_tables(which, max, field)?;
    Ok(match format {
        Format::Text => tables
            .iter()
            .map(Table::text)
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Csv => tables.iter().map(Table::csv).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            pretty(&json!({ "tables": tables.iter().map(Table::json).collect::<Vec<_>>() }))
        }
    })
}

fn run(cli: Cli) -> Result<String, Error> {
    if cli.list_families {
        return Ok(list_families());
    }
    match cli.command {
        None => Err(Error::InvalidArgument(
            "no command given (try --help)".into(),
        )),
        Some(Command::Jorder { kind, n, format }) => cmd_jorder(kind, n, format),
        Some(Command::Check {
            family: name,
            p,
            q,
            q2,
            n,
            format,
        }) => cmd_check(build_spec(family(&name)?, p, q, q2, n)?, format),
        Some(Command::Report {
            which,
            max,
            field,
            format,
        }) => cmd_report(which, max, field, format),
        Some(Command::Scan {
            family: name,
            pmax,
            qmax,
            format,
        }) => cmd_scan(family(&name)?, pmax, qmax, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
