//! The `ccc` command line.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohside;
use crate::conside;
use crate::fans::{self, FanJson, StackyFan, StandardFan};
use crate::picsym::PicMonomial;
use crate::skeleton::{self, SkeletonComponent};
use crate::verify::{self, Report, DEFAULT_SEED};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {0}: {1}")]
    Io(PathBuf, std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug, Clone)]
#[command(name = "ccc", version, about = "Coherent and constructible sides of toric mirror symmetry")]
pub struct RunConfig {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write to this file (atomically) instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Coh,
    Con,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Ccc,
    Kappa,
    Chambers,
    Monodromy,
    Generation,
    Cyclic,
    All,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cones, smoothness and Čech nerve of a fan.
    FanInfo {
        /// Fan JSON file, or inline JSON.
        fan: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Components of the skeleton of a (stacky) fan.
    Skeleton {
        fan: String,
        #[arg(long, conflicts_with = "json")]
        svg: bool,
        #[arg(long)]
        json: bool,
    },
    /// Graded hom dimensions on either side.
    Hom {
        #[arg(long, value_enum)]
        side: Side,
        /// Projective space P^n.
        #[arg(long, conflicts_with = "fan")]
        pn: Option<usize>,
        /// Fan JSON file or inline JSON with one maximal cone.
        #[arg(long)]
        fan: Option<String>,
        /// Source object: twist, generator index or character ("1" or "1,0").
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 12)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a comparison suite; exits 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        what: Check,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Stacky fan for `--what kappa`.
        #[arg(long)]
        fan: Option<String>,
        #[arg(long, default_value_t = 12)]
        bound: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The twisted chamber quiver of P^n.
    Quiver {
        #[arg(long)]
        n: usize,
        /// Names of the twisting bundles, one per coordinate: "L,M".
        #[arg(long)]
        pic: Option<String>,
        /// Relabel by the template Ikari and object symbols.
        #[arg(long)]
        template: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanInfo {
    pub rank: usize,
    pub cones: usize,
    pub maximal_cones: Vec<Vec<fans::IVec>>,
    pub rays: Vec<fans::IVec>,
    pub smooth: bool,
    pub stacky: bool,
    /// simplices of the Čech nerve by number of vertices
    pub nerve: Vec<usize>,
}

impl std::fmt::Display for FanInfo {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let word = |k: usize, one: &str, many: &str| format!("{k} {}", if k == 1 { one } else { many });
        let names = [("vertex", "vertices"), ("edge", "edges"), ("triangle", "triangles"), ("tetrahedron", "tetrahedra")];
        let nerve: Vec<String> = self
            .nerve
            .iter()
            .enumerate()
            .map(|(i, &k)| match names.get(i) {
                Some((one, many)) => word(k, one, many),
                None => word(k, &format!("{i}-simplex"), &format!("{i}-simplices")),
            })
            .collect();
        write!(
            f,
            "{}, {}{}, nerve: {}",
            word(self.cones, "cone", "cones"),
            if self.smooth { "smooth" } else { "singular" },
            if self.stacky { ", stacky" } else { "" },
            if nerve.is_empty() { "empty".to_string() } else { nerve.join(" / ") }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTable {
    pub side: String,
    pub from: String,
    pub to: String,
    /// "cohomology" (index = H^i), "ext" (index = Ext^i) or "weight"
    /// (index = degree).
    pub grading: String,
    pub dims: Vec<u64>,
}

impl std::fmt::Display for HomTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} side, {} -> {}", self.side, self.from, self.to)?;
        let head = match self.grading.as_str() {
            "cohomology" => "H^",
            "ext" => "Ext^",
            _ => "deg ",
        };
        for (i, d) in self.dims.iter().enumerate() {
            writeln!(f, "{head}{i}\t{d}")?;
        }
        Ok(())
    }
}

/// What a command produced: the text to emit and whether checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }

    /// 0 when every check held, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(!self.passed)
    }
}

pub fn load_fan(arg: &str) -> Result<StackyFan, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    FanJson::parse(&text).and_then(|j| j.to_stacky()).map_err(input)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn fan_info(sf: &StackyFan) -> FanInfo {
    let nerve = fans::cech_nerve(&sf.fan);
    FanInfo {
        rank: sf.fan.ambient_rank,
        cones: sf.fan.cones.len(),
        maximal_cones: sf.fan.maximal_cones().into_iter().map(|c| c.generators).collect(),
        rays: sf.fan.rays(),
        smooth: sf.fan.is_smooth(),
        stacky: !sf.is_identity(),
        nerve: nerve.f_vector(),
    }
}

/// `Some(n)` when the fan is the fan of `P^n`.
fn projective_dimension(sf: &StackyFan) -> Option<usize> {
    let n = sf.fan.ambient_rank;
    if !sf.is_identity() || n == 0 {
        return None;
    }
    let mut a = sf.fan.maximal_cones();
    let mut b = fans::standard_fan(StandardFan::Pn(n)).maximal_cones();
    a.sort_by(|x, y| x.generators.cmp(&y.generators));
    b.sort_by(|x, y| x.generators.cmp(&y.generators));
    (a == b).then_some(n)
}

fn parse_character(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| CliError::Input(format!("bad index {t:?}: {e}")))).collect()
}

/// A character given by its components; any integer names the single
/// character of the trivial group.
fn character_arg(group: &crate::zlin::FiniteAbelianGroup, s: &str) -> Result<crate::zlin::Character, CliError> {
    let raw = parse_character(s)?;
    if group.invariant_factors.is_empty() {
        return Ok(group.zero());
    }
    if raw.len() != group.invariant_factors.len() {
        return Err(CliError::Input(format!("character {s:?} needs {} components", group.invariant_factors.len())));
    }
    Ok(group.reduce(&raw.into_iter().map(Into::into).collect::<Vec<_>>()))
}

fn parse_int(s: &str) -> Result<i64, CliError> {
    s.trim().parse().map_err(|e| CliError::Input(format!("bad integer {s:?}: {e}")))
}

pub fn parse_pic(names: &str, n: usize) -> Result<(Vec<PicMonomial>, Vec<String>), CliError> {
    let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if names.len() != n {
        return Err(CliError::Input(format!("--pic needs {n} names, got {}", names.len())));
    }
    let mut seen = names.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != names.len() {
        return Err(CliError::Input("--pic names must be distinct".into()));
    }
    Ok(((0..n).map(|i| PicMonomial::generator(n, i)).collect(), names))
}

fn hom(side: Side, pn: Option<usize>, fan: Option<&str>, from: &str, to: &str, bound: usize) -> Result<HomTable, CliError> {
    match (side, pn, fan) {
        (Side::Coh, Some(n), None) => {
            let (a, b) = (parse_int(from)?, parse_int(to)?);
            let d = b - a;
            let h = cohside::pn_line_bundle_cohomology(n, d, d.abs()).map_err(input)?;
            Ok(HomTable { side: "coh".into(), from: format!("O({a})"), to: format!("O({b})"), grading: "cohomology".into(), dims: h })
        }
        (Side::Coh, None, Some(f)) => {
            let sf = load_fan(f)?;
            let g = cohside::gamma_category(&sf).map_err(input)?;
            let a = character_arg(&g.group, from)?;
            let b = character_arg(&g.group, to)?;
            let h = cohside::hom_graded(&g, &a, &b, bound).map_err(input)?;
            Ok(HomTable { side: "coh".into(), from: a.to_string(), to: b.to_string(), grading: "weight".into(), dims: h.dims })
        }
        (Side::Con, Some(n), None) => {
            let (a, b) = (parse_int(from)?, parse_int(to)?);
            let range = 1..=(n as i64 + 1);
            if !range.contains(&a) || !range.contains(&b) {
                return Err(CliError::Input(format!("generators are numbered 1..={}", n + 1)));
            }
            let cat = conside::chamber_category(n);
            let ga = conside::corepresentable(&cat, a as usize - 1);
            let gb = conside::corepresentable(&cat, b as usize - 1);
            let ext = conside::rep_hom(&cat, &ga, &gb).map_err(input)?;
            Ok(HomTable {
                side: "con".into(),
                from: format!("G{a}"),
                to: format!("G{b}"),
                grading: "ext".into(),
                dims: ext.into_iter().map(|x| x as u64).collect(),
            })
        }
        (Side::Con, None, Some(_)) => Err(CliError::Input("the constructible side is available for --pn only".into())),
        _ => Err(CliError::Input("give exactly one of --pn or --fan".into())),
    }
}

fn render_report(r: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(format!("{r}\n")),
        Format::Json => Ok(to_json(r)),
        f => Err(CliError::Input(format!("verify writes text or json, not {f:?}"))),
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cfg.command {
        Command::FanInfo { fan, format } => {
            let info = fan_info(&load_fan(fan)?);
            match format {
                Format::Text => Ok(Outcome::ok(format!("{info}\n"))),
                Format::Json => Ok(Outcome::ok(to_json(&info))),
                f => Err(CliError::Input(format!("fan-info writes text or json, not {f:?}"))),
            }
        }
        Command::Skeleton { fan, svg, json } => {
            let sf = load_fan(fan)?;
            let comps: Vec<SkeletonComponent> = skeleton::fltz_components(&sf).map_err(input)?;
            if *svg {
                let text = match projective_dimension(&sf) {
                    Some(n) if n <= 2 => {
                        skeleton::chambers_svg(&skeleton::chamber_quiver(n, &vec![PicMonomial::unit(0); n])).map_err(input)?
                    }
                    _ => skeleton::components_svg(sf.fan.ambient_rank, &comps).map_err(input)?,
                };
                Ok(Outcome::ok(text))
            } else if *json {
                Ok(Outcome::ok(to_json(&comps)))
            } else {
                let mut text = format!("{} components\n", comps.len());
                for c in &comps {
                    text.push_str(&format!("{}  chi=({})\n", c.cone, c.character.join(",")));
                }
                Ok(Outcome::ok(text))
            }
        }
        Command::Hom { side, pn, fan, from, to, bound, format } => {
            if *bound == 0 {
                return Err(CliError::Input("--bound must be positive".into()));
            }
            let table = hom(*side, *pn, fan.as_deref(), from, to, *bound)?;
            match format {
                Format::Text => Ok(Outcome::ok(table.to_string())),
                Format::Json => Ok(Outcome::ok(to_json(&table))),
                f => Err(CliError::Input(format!("hom writes text or json, not {f:?}"))),
            }
        }
        Command::Verify { what, n, fan, bound, samples, format } => {
            if *bound == 0 {
                return Err(CliError::Input("--bound must be positive".into()));
            }
            if *n == 0 {
                return Err(CliError::Input("--n must be positive".into()));
            }
            let r = match what {
                Check::Ccc => verify::ccc(*n),
                Check::Kappa => match fan {
                    Some(f) => {
                        let sf = load_fan(f)?;
                        cohside::gamma_category(&sf).map_err(input)?;
                        verify::kappa_fan(&sf, *bound)
                    }
                    None => {
                        let mut r = verify::kappa_line(*n, *bound);
                        for k in 0..=(*n).min(3) {
                            r = r.merge(verify::kappa_orthant(k, (*n).min(3), *bound));
                        }
                        r
                    }
                },
                Check::Chambers => verify::chambers(*n),
                Check::Monodromy => verify::monodromy(*n),
                Check::Generation => verify::generation(*n, cfg.seed, *samples),
                Check::Cyclic => verify::cyclic(*n, *bound),
                Check::All => verify::all(*n, cfg.seed),
            };
            Ok(Outcome { text: render_report(&r, *format)?, passed: r.passed })
        }
        Command::Quiver { n, pic, template, dot, json } => {
            if *n == 0 {
                return Err(CliError::Input("--n must be positive".into()));
            }
            let (pic, names) = match pic {
                Some(p) => parse_pic(p, *n)?,
                None => (vec![PicMonomial::unit(0); *n], vec![]),
            };
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let (q, symbols) = if *template && !names.is_empty() {
                let t = conside::twisted_rep_template(*n, &pic);
                (t.quiver, t.symbols)
            } else {
                (skeleton::chamber_quiver(*n, &pic), conside::default_symbols(*n))
            };
            if *dot {
                return Ok(Outcome::ok(conside::quiver_dot(&q, &names)));
            }
            if *json {
                return Ok(Outcome::ok(to_json(&q)));
            }
            let mut text = format!("{} vertices, {} edges\n", q.vertices.len(), q.edges.len());
            for (v, l) in q.vertices.iter().zip(&q.vertex_labels) {
                let sym = &symbols[v.class()];
                let lab = if l.is_unit() { String::new() } else { l.render(&names).replace(' ', "") };
                text.push_str(&format!("{}{}\t{sym}{lab}\n", v.chamber, if v.duplicate { "'" } else { "" }));
            }
            for (e, l) in q.edges.iter().zip(&q.edge_labels) {
                let lab = l.as_ref().map(|m| m.render(&names)).unwrap_or_else(|| "1".into());
                let name = |v: usize| format!("{}{}", q.vertices[v].chamber, if q.vertices[v].duplicate { "'" } else { "" });
                text.push_str(&format!("{} -> {}\t{lab}\n", name(e.source), name(e.target)));
            }
            if *n == 1 && !names.is_empty() {
                text.push_str(&skeleton::render_circle_quiver(&q, &names));
                text.push('\n');
            }
            Ok(Outcome::ok(text))
        }
    }
}

/// Writes via a temporary file in the target directory and a rename.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let io = |e: std::io::Error| CliError::Io(path.to_path_buf(), e);
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Runs the command and returns the process exit code.
pub fn main_with(cfg: &RunConfig) -> i32 {
    let outcome = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match &cfg.output {
        Some(p) => {
            if let Err(e) = write_atomic(p, &outcome.text) {
                eprintln!("error: {e}");
                return e.exit_code();
            }
        }
        None => print!("{}", outcome.text),
    }
    outcome.exit_code()
}

/// Parses real process arguments; argument errors exit with 2.
pub fn from_args() -> RunConfig {
    match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    }
}
