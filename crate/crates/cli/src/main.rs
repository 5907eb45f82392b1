mod diagram;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use sonc_core::verify::dyadic_grid;
use sonc_core::{parse_ground_set, GroundSet, SoncCone};

use report::*;

const PROBE_THRESHOLD: f64 = 1e-6;
const PROBE_DEPTH: u32 = 20;

#[derive(Parser)]
#[command(name = "sonc", version, about = "Exposed extreme rays of SONC cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all circuits with barycentric coordinates and reduced flags.
    Circuits {
        /// Ground-set document; standard input when omitted.
        input: Option<PathBuf>,
    },
    /// Decide, certify and verify every extreme ray.
    Atlas {
        /// Ground-set document; standard input when omitted.
        input: Option<PathBuf>,
        /// Run the LP probe on every unexposed monomial ray.
        #[arg(long)]
        probe: bool,
        /// Random samples per circuit family in the numeric spot-check.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Seed for the spot-check sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a planar ground set with its circuits as SVG.
    Diagram {
        /// Ground-set document with n = 2; standard input when omitted.
        input: Option<PathBuf>,
    },
}

fn read_ground_set(path: Option<&PathBuf>) -> Result<GroundSet, String> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| format!("stdin: {e}"))?;
            s
        }
    };
    parse_ground_set(&text).map_err(|e| e.to_string())
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn circuits(a: GroundSet) -> String {
    let cone = SoncCone::new(a);
    let listing = CircuitListing {
        ground_set: cone.ground_set().into(),
        circuits: cone
            .circuits()
            .iter()
            .zip(cone.reduced_flags())
            .map(|(c, &r)| CircuitJson::new(c, r))
            .collect(),
    };
    serde_json::to_string_pretty(&listing).expect("serializable")
}

fn atlas(a: GroundSet, probe: bool, samples: usize, seed: u64) -> RunReport {
    let mut timing = Timing::default();
    let mut failures = Vec::new();

    let t = Instant::now();
    let cone = SoncCone::new(a);
    timing.circuits_ms = ms(t);

    let t = Instant::now();
    let decisions = cone.decisions();
    timing.decisions_ms = ms(t);

    let t = Instant::now();
    let certified: Vec<_> = decisions
        .par_iter()
        .filter(|d| d.exposed)
        .map(|d| (d, cone.certify(&d.ray)))
        .collect();
    let mut certificates = Vec::new();
    for (d, c) in certified {
        match c {
            Ok(c) => certificates.push(c),
            Err(e) => failures.push(format!("{}: certificate construction failed: {e}", d.ray)),
        }
    }
    timing.certificates_ms = ms(t);

    let t = Instant::now();
    let verdicts: Vec<VerdictJson> = certificates
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            VerdictJson::new(&c.ray, cone.verify(c), cone.spotcheck(c, samples, seed.wrapping_add(i as u64)))
        })
        .collect();
    for v in verdicts.iter().filter(|v| !v.pass) {
        failures.push(format!("{}: {} failed checks", v.ray, v.failures.len()));
    }
    timing.verification_ms = ms(t);

    let t = Instant::now();
    let probes = probe.then(|| {
        let grid = dyadic_grid(PROBE_DEPTH);
        let results: Vec<_> = decisions
            .par_iter()
            .filter(|d| !d.exposed)
            .map(|d| (d, cone.probe(&d.ray, &grid)))
            .collect();
        let mut out = Vec::new();
        for (d, r) in results {
            match r {
                Ok(Some(curve)) => {
                    let final_margin = curve.final_margin();
                    let monotone = curve.is_monotone();
                    let pass = monotone && final_margin <= PROBE_THRESHOLD;
                    if !pass {
                        failures.push(format!("{}: probe margin {final_margin:e}", d.ray));
                    }
                    out.push(ProbeJson { curve, final_margin, monotone, pass });
                }
                Ok(None) => failures.push(format!("{}: no witness to probe", d.ray)),
                Err(e) => failures.push(format!("{}: probe failed: {e}", d.ray)),
            }
        }
        out
    });
    timing.probes_ms = ms(t);

    RunReport {
        ground_set: cone.ground_set().into(),
        circuits: cone
            .circuits()
            .iter()
            .zip(cone.reduced_flags())
            .map(|(c, &r)| CircuitJson::new(c, r))
            .collect(),
        lambda: cone.lambda(),
        rays: cone.rays().iter().map(RayJson::from).collect(),
        decisions: decisions.iter().map(DecisionJson::from).collect(),
        certificates: certificates.iter().map(CertificateJson::from).collect(),
        verdicts,
        probes,
        pass: failures.is_empty(),
        failures,
        timing,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let input = match &cli.command {
        Command::Circuits { input } | Command::Atlas { input, .. } | Command::Diagram { input } => input,
    };
    let a = match read_ground_set(input.as_ref()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match cli.command {
        Command::Circuits { .. } => {
            println!("{}", circuits(a));
            ExitCode::SUCCESS
        }
        Command::Atlas { probe, samples, seed, .. } => {
            let report = atlas(a, probe, samples, seed);
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                for f in &report.failures {
                    eprintln!("verification failure: {f}");
                }
                ExitCode::from(2)
            }
        }
        Command::Diagram { .. } => {
            if a.dim() != 2 {
                eprintln!("error: diagram requires n=2");
                return ExitCode::from(1);
            }
            print!("{}", diagram::render(&SoncCone::new(a)));
            ExitCode::SUCCESS
        }
    }
}
