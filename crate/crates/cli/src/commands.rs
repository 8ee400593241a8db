use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use hyperholo_core::potential::{cauchy_sweep, jump_sweep};
use hyperholo_core::verify::{certify_all, tolerances, Verdict};
use hyperholo_core::{CQuat, CheckReport, Claim, Complex64, KernelCtx, Point2, Scenario, ScenarioSet};
use serde::Serialize;

pub enum Status {
    Pass,
    Fail,
}

pub const CSV_HEADER: &str = "x,y,q0_re,q0_im,q1_re,q1_im,q2_re,q2_im,q3_re,q3_im,mask";

fn read_scenario(path: &Path) -> Result<Scenario> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Scenario::from_json(&text)?)
}

fn emit(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

pub fn field(config: &Path, out: Option<&Path>) -> Result<Status> {
    let sc = read_scenario(config)?;
    let Some(grid) = &sc.grid else {
        bail!("{}: field needs a `grid` section", config.display());
    };
    let b = sc.build()?;
    let points = grid.points();
    // one boundary node spacing
    let band = b.curve.length() / b.quad.boundary_nodes as f64;
    let masked: Vec<bool> = points.iter().map(|p| b.curve.distance(*p) < band).collect();
    let live: Vec<Point2> = points.iter().zip(&masked).filter(|(_, m)| !**m).map(|(p, _)| *p).collect();
    let mut values = cauchy_sweep(&b.ctx, &b.curve, &b.density, &live, &b.quad)?.into_iter();

    let mut csv = String::with_capacity(points.len() * 120);
    csv.push_str(CSV_HEADER);
    csv.push('\n');
    for (p, m) in points.iter().zip(&masked) {
        let v = if *m { None } else { values.next().transpose()? };
        write!(csv, "{},{}", p.x, p.y)?;
        match v {
            Some(q) => {
                for c in q.components() {
                    write!(csv, ",{:e},{:e}", c.re, c.im)?;
                }
                csv.push_str(",0\n");
            }
            None => csv.push_str(",nan,nan,nan,nan,nan,nan,nan,nan,1\n"),
        }
    }
    let target = out.map(Path::to_path_buf).or(sc.output.field_csv.clone());
    emit(target.as_deref(), &csv)?;
    Ok(Status::Pass)
}

#[derive(Serialize)]
struct JumpOutput<'a> {
    scenario: &'a str,
    points: usize,
    tolerance: f64,
    max_normalized_residual: f64,
    pass: bool,
    reports: Vec<hyperholo_core::JumpReport>,
}

pub fn jump(config: &Path, points: usize, out: Option<&Path>) -> Result<Status> {
    if points == 0 {
        bail!("--points must be positive");
    }
    let sc = read_scenario(config)?;
    let b = sc.build()?;
    let reports = jump_sweep(&b.ctx, &b.curve, &b.density, points, &b.quad)?;
    let worst = reports.iter().map(|r| r.max_residual() / (1.0 + r.f_t.norm())).fold(0.0, f64::max);
    let pass = worst < tolerances::JUMP;
    let body = JumpOutput {
        scenario: &b.label,
        points,
        tolerance: tolerances::JUMP,
        max_normalized_residual: worst,
        pass,
        reports,
    };
    let target = out.map(Path::to_path_buf).or(sc.output.jump_json.clone());
    emit(target.as_deref(), &(serde_json::to_string_pretty(&body)? + "\n"))?;
    Ok(if pass { Status::Pass } else { Status::Fail })
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    input: &'a str,
    tolerance_table: &'static str,
    pass: bool,
    reports: Vec<CheckReport>,
}

#[derive(Serialize)]
struct Meta {
    generated_unix_s: u64,
    elapsed_s: f64,
    threads: usize,
    version: &'static str,
}

fn meta_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.meta.json"))
}

pub fn certify(input: &str, claim: Option<&str>, out: Option<&Path>, summary: Option<&Path>) -> Result<Status> {
    let start = Instant::now();
    let set = if input == "reference" {
        ScenarioSet::reference()
    } else {
        let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        ScenarioSet::from_json(&text)?
    };
    let claims: Vec<Claim> = match claim {
        Some(id) => {
            let Some(c) = Claim::from_id(id) else {
                let known: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
                bail!("unknown claim {id:?}; known claims: {}", known.join(", "));
            };
            vec![c]
        }
        None => Claim::ALL.to_vec(),
    };
    let reports = certify_all(&set, &claims)?;
    let pass = reports.iter().all(|r| r.pass);
    let body = CertifyOutput { input, tolerance_table: tolerances::TABLE_VERSION, pass, reports };
    let json = serde_json::to_string_pretty(&body)? + "\n";
    emit(out, &json)?;
    if let Some(p) = out {
        let meta = Meta {
            generated_unix_s: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            elapsed_s: start.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
            version: env!("CARGO_PKG_VERSION"),
        };
        let mp = meta_path(p);
        fs::write(&mp, serde_json::to_string_pretty(&meta)? + "\n")
            .with_context(|| format!("writing {}", mp.display()))?;
    }
    if let Some(p) = summary {
        fs::write(p, markdown(&body.reports)).with_context(|| format!("writing {}", p.display()))?;
    }
    for r in &body.reports {
        eprintln!("{:<18} {:<15} residual {:.3e} (tol {:.0e})", r.claim, verdict_str(r.verdict), r.final_residual(), r.tolerance);
    }
    Ok(if pass { Status::Pass } else { Status::Fail })
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::ConsistentWith => "consistent with",
        Verdict::Failed => "FAILED",
    }
}

fn markdown(reports: &[CheckReport]) -> String {
    let mut s = String::from("| claim | verdict | residual | tolerance | order |\n|---|---|---|---|---|\n");
    for r in reports {
        let order = r.order_estimate.map(|o| format!("{o:.2}")).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "| {} | {} | {:.3e} | {:.0e} | {} |",
            r.claim,
            verdict_str(r.verdict),
            r.final_residual(),
            r.tolerance,
            order
        );
    }
    for r in reports.iter().filter(|r| !r.notes.is_empty()) {
        let _ = writeln!(s, "\n**{}**: {}", r.claim, r.notes.join("; "));
    }
    s
}

#[derive(Serialize)]
struct KernelOutput {
    alpha: [f64; 2],
    z: Point2,
    branch: Option<hyperholo_core::Branch>,
    theta: [f64; 2],
    kernel: CQuat,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular: Option<CQuat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regular: Option<CQuat>,
}

pub fn kernel_eval(re: f64, im: f64, x: f64, y: f64) -> Result<Status> {
    let alpha = Complex64::new(re, im);
    let ctx = KernelCtx::new(alpha);
    let z = Point2::new(x, y);
    let theta = ctx.theta(z)?;
    let split = if ctx.is_degenerate() { None } else { Some(ctx.kernel_split(z)?) };
    let body = KernelOutput {
        alpha: [re, im],
        z,
        branch: ctx.branch(),
        theta: [theta.re, theta.im],
        kernel: ctx.cauchy_kernel(z)?,
        singular: split.map(|s| s.0),
        regular: split.map(|s| s.1),
    };
    println!("{}", serde_json::to_string_pretty(&body)?);
    Ok(Status::Pass)
}
