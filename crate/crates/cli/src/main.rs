use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logjet::algebra::{parse_rational, Rational};
use logjet::audit::{
    alpha_report, chi, chi_leading_report, filtration, jets_roundtrip, threshold_report, verify_lemma1, verify_lemma2,
    verify_poles, verify_prop1, verify_tangency, AuditError, AuditReport, ClaimResult, FieldFamily, DEFAULT_MAX_M,
    DEFAULT_SWEEP_MAX_DEGREE,
};
use logjet::intersection::{AlphaSource, Partition};

/// Exact audits of logarithmic 3-jet vector fields and jet-differential asymptotics on P^3.
#[derive(Parser, Debug)]
#[command(name = "logjet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Symbolic verification suites for the universal family.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Seeded jet-coordinate checks.
    Jets {
        #[command(subcommand)]
        suite: JetSuite,
    },
    /// Enumerate the graded pieces of the jet differential filtration.
    Filtration {
        #[arg(long)]
        m: Option<u64>,
        /// Largest m checked against the brute-force oracle.
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: u64,
    },
    /// Euler characteristic of a Schur power, or the graded sum at m.
    Chi {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Option<Partition>,
        #[arg(long, default_value_t = 5)]
        degree: i64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, value_parser = parse_delta)]
        delta: Option<Rational>,
        #[arg(long, default_value_t = DEFAULT_MAX_M)]
        max_m: u64,
    },
    /// The m^9 coefficient of the Euler characteristic.
    ChiLeading {
        #[arg(long, value_parser = parse_delta)]
        delta: Option<Rational>,
        /// Also compare against a finite-difference fit at this degree.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// The twisted leading coefficient, from both sources.
    Alpha {
        #[arg(long)]
        degree: Option<i64>,
        #[arg(long, value_parser = parse_delta)]
        delta: Option<Rational>,
    },
    /// Smallest surface degree with a positive twisted leading coefficient.
    Threshold {
        #[arg(long, value_enum, default_value_t = SourceArg::Derived)]
        source: SourceArg,
        /// Upper end of the degree scan.
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
struct SweepArgs {
    /// A single surface degree; without it the suite sweeps up to --max-degree.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, default_value = "all", value_parser = parse_family)]
    family: FieldFamily,
    #[arg(long, default_value_t = DEFAULT_SWEEP_MAX_DEGREE)]
    max_degree: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SweepArgs {
    fn degrees(&self, from: u32, to: u32) -> Vec<u32> {
        match self.degree {
            Some(d) => vec![d],
            None => (from..=to.min(self.max_degree)).collect(),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Suite {
    Tangency(SweepArgs),
    Lemma1(SweepArgs),
    Lemma2(SweepArgs),
    Prop1(SweepArgs),
    Poles(SweepArgs),
}

#[derive(Subcommand, Debug)]
enum JetSuite {
    Roundtrip {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SourceArg {
    /// The hand-entered 16-term coefficient table.
    #[value(alias = "paper")]
    Transcribed,
    Derived,
}

impl From<SourceArg> for AlphaSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Transcribed => AlphaSource::Transcribed,
            SourceArg::Derived => AlphaSource::Derived,
        }
    }
}

fn parse_lambda(s: &str) -> Result<Partition, String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let l: [i64; 3] = parts.try_into().map_err(|_| "expected three comma-separated integers".to_string())?;
    Partition::new(l).map_err(|e| e.to_string())
}

fn parse_delta(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<FieldFamily, String> {
    s.parse().map_err(|e: AuditError| e.to_string())
}

fn sweep_params(a: &SweepArgs) -> BTreeMap<String, String> {
    let mut p = BTreeMap::new();
    if let Some(d) = a.degree {
        p.insert("degree".into(), d.to_string());
    }
    p.insert("family".into(), a.family.to_string());
    p.insert("max_degree".into(), a.max_degree.to_string());
    p.insert("seed".into(), a.seed.to_string());
    p
}

fn opt<T: ToString>(p: &mut BTreeMap<String, String>, key: &str, v: Option<T>) {
    if let Some(v) = v {
        p.insert(key.into(), v.to_string());
    }
}

type Run = Result<Vec<ClaimResult>, AuditError>;

fn dispatch(command: Command) -> (String, BTreeMap<String, String>, Run) {
    match command {
        Command::Verify { suite } => {
            let (name, a) = match &suite {
                Suite::Tangency(a) => ("tangency", a),
                Suite::Lemma1(a) => ("lemma1", a),
                Suite::Lemma2(a) => ("lemma2", a),
                Suite::Prop1(a) => ("prop1", a),
                Suite::Poles(a) => ("poles", a),
            };
            let run = match &suite {
                Suite::Tangency(a) => verify_tangency(&a.degrees(4, a.max_degree), a.family, a.seed),
                Suite::Lemma1(a) => verify_lemma1(&a.degrees(2, 6)),
                Suite::Lemma2(a) => verify_lemma2(a.seed),
                Suite::Prop1(_) => verify_prop1(),
                Suite::Poles(a) => verify_poles(&a.degrees(4, a.max_degree), a.family, a.seed),
            };
            (format!("verify {name}"), sweep_params(a), run)
        }
        Command::Jets {
            suite: JetSuite::Roundtrip { samples, seed },
        } => {
            let p = BTreeMap::from([("samples".into(), samples.to_string()), ("seed".into(), seed.to_string())]);
            ("jets roundtrip".into(), p, jets_roundtrip(samples, seed))
        }
        Command::Filtration { m, max_m } => {
            let mut p = BTreeMap::from([("max_m".into(), max_m.to_string())]);
            opt(&mut p, "m", m);
            ("filtration".into(), p, Ok(filtration(m, max_m)))
        }
        Command::Chi {
            lambda,
            degree,
            m,
            delta,
            max_m,
        } => {
            let mut p = BTreeMap::from([("degree".into(), degree.to_string()), ("max_m".into(), max_m.to_string())]);
            opt(&mut p, "lambda", lambda.map(|l| l.to_string()));
            opt(&mut p, "m", m);
            opt(&mut p, "delta", delta.as_ref());
            ("chi".into(), p, chi(lambda, degree, m, delta.as_ref(), max_m))
        }
        Command::ChiLeading { delta, degree } => {
            let mut p = BTreeMap::new();
            opt(&mut p, "delta", delta.as_ref());
            opt(&mut p, "degree", degree);
            ("chi-leading".into(), p, chi_leading_report(delta.as_ref(), degree))
        }
        Command::Alpha { degree, delta } => {
            let mut p = BTreeMap::new();
            opt(&mut p, "degree", degree);
            opt(&mut p, "delta", delta.as_ref());
            ("alpha".into(), p, Ok(alpha_report(degree, delta.as_ref())))
        }
        Command::Threshold { source, max_degree } => {
            let source = AlphaSource::from(source);
            let mut p = BTreeMap::from([("source".into(), source.name().to_string())]);
            opt(&mut p, "max_degree", max_degree);
            ("threshold".into(), p, threshold_report(source, max_degree))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, parameters, run) = dispatch(cli.command);
    let mut report = AuditReport::new(command, parameters);
    let code = match run {
        Ok(results) => {
            report.extend(results);
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    println!("{}", report.to_json());
    eprintln!("{}", report.summary());
    ExitCode::from(code as u8)
}
