//! Descriptor files, batch runs and reports.
//!
//! A descriptor is a list of `key = value` lines followed by optional
//! `[h_matrix]` and `[phi]` blocks. `#` starts a comment.
//!
//! ```text
//! l = 2
//! d = 1
//! H = Z/5
//! T = Z/4
//! spin = false
//! smooth = true
//! c1 = 0
//! c2 = 1
//! consumed = [0]
//! case = ip_tilde_eta 0
//! ```
//!
//! With attaching data instead of `c1`/`c2`/`consumed`/`case`:
//!
//! ```text
//! [h_matrix]
//! 0 0          # one row per S^3 summand, then one per 2-primary summand of T
//! i3eta 0
//! [phi]
//! x: 0
//! y: 0
//! z:
//! eps:
//! w: 1
//! ```

use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::decompose::{
    decomposition, homology_sections, manifold_homology, resolve, validate,
    DescriptorData, HomologySections, InvariantData, ManifoldDescriptor, Mode, PhiInput, ValidationReport,
};
use crate::invariants::{hurewicz_cohomotopy, k_group, ko_group, pi3, pi4_sigma_crosscheck};
use crate::reduction::{AttachCase, HEntry, HMatrix, MooreRow};
use crate::spaces::{wedge_homology, Wedge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {msg}")]
    Range { line: usize, msg: String },
    #[error("{0}")]
    Consistency(String),
    #[error("{0}")]
    Invalid(ValidationReport),
}

#[derive(Default)]
struct RawDescriptor {
    keys: Vec<(String, String, usize, usize)>,
    h_rows: Vec<(Vec<String>, usize)>,
    phi: Vec<(String, Vec<String>, usize)>,
    has_h: bool,
    has_phi: bool,
}

fn lex(text: &str) -> Result<RawDescriptor, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        Top,
        H,
        Phi,
    }
    let mut raw = RawDescriptor::default();
    let mut section = Section::Top;
    for (n, full) in text.lines().enumerate() {
        let line = n + 1;
        let body = full.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.len() - body.trim_start().len() + 1;
        let syntax = |msg: &str| ParseError::Syntax { line, col, msg: msg.to_string() };
        if trimmed.starts_with('[') {
            section = match trimmed {
                "[h_matrix]" if !raw.has_h => {
                    raw.has_h = true;
                    Section::H
                }
                "[phi]" if !raw.has_phi => {
                    raw.has_phi = true;
                    Section::Phi
                }
                "[h_matrix]" | "[phi]" => return Err(syntax("block given twice")),
                _ => return Err(syntax("unknown block (expected [h_matrix] or [phi])")),
            };
            continue;
        }
        match section {
            Section::Top => {
                let (k, v) = trimmed.split_once('=').ok_or_else(|| syntax("expected `key = value`"))?;
                let k = k.trim();
                if k.is_empty() {
                    return Err(syntax("missing key"));
                }
                if raw.keys.iter().any(|(key, ..)| key == k) {
                    return Err(syntax(&format!("key `{k}` given twice")));
                }
                raw.keys.push((k.to_string(), v.trim().to_string(), line, col));
            }
            Section::H => raw.h_rows.push((trimmed.split_whitespace().map(String::from).collect(), line)),
            Section::Phi => {
                let (k, v) = trimmed.split_once(':').ok_or_else(|| syntax("expected `block: entries`"))?;
                let k = k.trim();
                if !["x", "y", "z", "eps", "w"].contains(&k) {
                    return Err(syntax(&format!("unknown phi block `{k}`")));
                }
                if raw.phi.iter().any(|(key, ..)| key == k) {
                    return Err(syntax(&format!("phi block `{k}` given twice")));
                }
                raw.phi.push((k.to_string(), v.split_whitespace().map(String::from).collect(), line));
            }
        }
    }
    Ok(raw)
}

const KEYS: [&str; 11] = ["l", "d", "H", "T", "spin", "smooth", "pd_mode", "c1", "c2", "consumed", "case"];

fn parse_case(v: &str, exps: &[u32], line: usize) -> Result<AttachCase, ParseError> {
    let mut parts = v.split_whitespace();
    let name = parts.next().unwrap_or("");
    let index = parts.next();
    if parts.next().is_some() {
        return Err(ParseError::Range { line, msg: format!("case `{v}` has too many fields") });
    }
    let indexed = |build: fn(usize, u32) -> AttachCase| -> Result<AttachCase, ParseError> {
        let j: usize = index
            .ok_or_else(|| ParseError::Range { line, msg: format!("case `{name}` needs a summand index") })?
            .parse()
            .map_err(|_| ParseError::Range { line, msg: format!("bad summand index in `{v}`") })?;
        let r = *exps.get(j).ok_or_else(|| ParseError::Range {
            line,
            msg: format!("case index {j} is not a 2-primary summand of T ({} of them)", exps.len()),
        })?;
        Ok(build(j, r))
    };
    let plain = |c: AttachCase| -> Result<AttachCase, ParseError> {
        match index {
            None => Ok(c),
            Some(_) => Err(ParseError::Range { line, msg: format!("case `{name}` takes no index") }),
        }
    };
    match name {
        "null" => plain(AttachCase::Null),
        "eta" => plain(AttachCase::EtaTop),
        "eta_sq" => plain(AttachCase::EtaSqTop),
        "tilde_eta" => indexed(|index, r| AttachCase::TildeEtaTop { index, r }),
        "ip_tilde_eta" => indexed(|index, r| AttachCase::IPTildeEtaTop { index, r }),
        "i_eta_sq" => indexed(|index, r| AttachCase::IEtaSqTop { index, r }),
        _ => Err(ParseError::Range { line, msg: format!("unknown case `{name}`") }),
    }
}

/// Parses a descriptor without checking the mathematical constraints.
pub fn parse_descriptor_unchecked(text: &str) -> Result<ManifoldDescriptor, ParseError> {
    let raw = lex(text)?;
    let get = |k: &str| raw.keys.iter().find(|(key, ..)| key == k);
    for (k, _, line, col) in &raw.keys {
        if !KEYS.contains(&k.as_str()) {
            return Err(ParseError::Syntax { line: *line, col: *col, msg: format!("unknown key `{k}`") });
        }
    }
    let uint = |k: &str| -> Result<Option<u32>, ParseError> {
        get(k)
            .map(|(_, v, line, _)| {
                v.parse::<u32>().map_err(|_| ParseError::Range { line: *line, msg: format!("`{k}` must be a non-negative integer, got `{v}`") })
            })
            .transpose()
    };
    let flag = |k: &str| -> Result<Option<bool>, ParseError> {
        get(k)
            .map(|(_, v, line, _)| match v.as_str() {
                "true" => Ok(true),
                "false" => Ok(false),
                _ => Err(ParseError::Range { line: *line, msg: format!("`{k}` must be true or false, got `{v}`") }),
            })
            .transpose()
    };
    let group = |k: &str| -> Result<FgAbGroup, ParseError> {
        match get(k) {
            None => Ok(FgAbGroup::zero()),
            Some((_, v, line, _)) => v.parse().map_err(|e| ParseError::Range { line: *line, msg: format!("`{k}`: {e}") }),
        }
    };
    let required = |k: &str| ParseError::Consistency(format!("missing required key `{k}`"));
    let l = uint("l")?.ok_or_else(|| required("l"))?;
    let d = uint("d")?.ok_or_else(|| required("d"))?;
    let h = group("H")?;
    let t = group("T")?;
    let spin = flag("spin")?.ok_or_else(|| required("spin"))?;
    let pd_mode = flag("pd_mode")?.unwrap_or(false);
    let smooth = flag("smooth")?.unwrap_or(!pd_mode);
    let exps: Vec<u32> = t.torsion().iter().filter(|&&(p, _)| p == 2).map(|&(_, e)| e).collect();

    let invariant_keys: Vec<&str> = ["c1", "c2", "consumed", "case"].into_iter().filter(|k| get(k).is_some()).collect();
    let data = if raw.has_h || raw.has_phi {
        if !invariant_keys.is_empty() {
            return Err(ParseError::Consistency(format!(
                "provide invariant data or attaching data, not both (found {} with an attaching block)",
                invariant_keys.join(", ")
            )));
        }
        if !(raw.has_h && raw.has_phi) {
            return Err(ParseError::Consistency("attaching data needs both [h_matrix] and [phi]".into()));
        }
        DescriptorData::Attaching { h_matrix: build_h(&raw, l, d, &exps)?, phi: build_phi(&raw, &exps)? }
    } else {
        let c1 = uint("c1")?.unwrap_or(0);
        let c2 = uint("c2")?.unwrap_or(0);
        let consumed = match get("consumed") {
            None => (0..c2 as usize).collect(),
            Some((_, v, line, _)) => parse_index_list(v, *line)?,
        };
        let case = match get("case") {
            None => AttachCase::Null,
            Some((_, v, line, _)) => parse_case(v, &exps, *line)?,
        };
        DescriptorData::Invariant(InvariantData { c1, c2, consumed, case })
    };
    Ok(ManifoldDescriptor { l, d, h, t, spin, smooth, pd_mode, data })
}

fn parse_index_list(v: &str, line: usize) -> Result<Vec<usize>, ParseError> {
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| ParseError::Range { line, msg: format!("`consumed` must look like [0, 2], got `{v}`") })?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| ParseError::Range { line, msg: format!("bad index `{s}` in `consumed`") }))
        .collect()
}

fn build_h(raw: &RawDescriptor, l: u32, d: u32, exps: &[u32]) -> Result<HMatrix, ParseError> {
    let want = d as usize + exps.len();
    if raw.h_rows.len() != want {
        return Err(ParseError::Consistency(format!(
            "[h_matrix] has {} rows, expected d + t2 = {want}",
            raw.h_rows.len()
        )));
    }
    let mut m = HMatrix { cols: l as usize, sphere: Vec::new(), moore: Vec::new() };
    for (i, (cells, line)) in raw.h_rows.iter().enumerate() {
        if cells.len() != l as usize {
            return Err(ParseError::Range { line: *line, msg: format!("row has {} entries, expected l = {l}", cells.len()) });
        }
        let entries = cells
            .iter()
            .map(|c| match c.as_str() {
                "0" => Ok(HEntry::Zero),
                "eta" => Ok(HEntry::Eta),
                "i3eta" => Ok(HEntry::I3Eta),
                _ => Err(ParseError::Range { line: *line, msg: format!("unknown entry `{c}` (expected 0, eta or i3eta)") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if i < d as usize {
            m.sphere.push(entries);
        } else {
            m.moore.push(MooreRow { r: exps[i - d as usize], entries });
        }
    }
    m.validate().map_err(|e| ParseError::Consistency(e.to_string()))?;
    Ok(m)
}

fn build_phi(raw: &RawDescriptor, exps: &[u32]) -> Result<PhiInput, ParseError> {
    let block = |k: &str| raw.phi.iter().find(|(key, ..)| key == k);
    let bits = |k: &str, max: u8| -> Result<Vec<u8>, ParseError> {
        let Some((_, vals, line)) = block(k) else { return Ok(Vec::new()) };
        vals.iter()
            .map(|v| match v.parse::<u8>() {
                Ok(b) if b <= max => Ok(b),
                _ => Err(ParseError::Range { line: *line, msg: format!("`{k}` entry `{v}` out of range 0..={max}") }),
            })
            .collect()
    };
    let to_bool = |v: Vec<u8>| v.into_iter().map(|b| b == 1).collect::<Vec<bool>>();
    // z may carry a Z/4 coefficient of eta~_1; its high bit is an eps
    let z_raw = bits("z", 3)?;
    let mut eps = to_bool(bits("eps", 1)?);
    if eps.len() < z_raw.len() && z_raw.iter().any(|&c| c >= 2) {
        eps.resize(z_raw.len(), false);
    }
    if let Some((_, _, line)) = block("z") {
        if z_raw.iter().any(|&c| c >= 2) && exps.iter().all(|&r| r != 1) {
            return Err(ParseError::Range { line: *line, msg: "z coefficients 2 and 3 need a Z/2 summand".into() });
        }
    }
    for (i, &c) in z_raw.iter().enumerate() {
        if c >= 2 {
            eps[i] ^= true;
        }
    }
    Ok(PhiInput {
        x: to_bool(bits("x", 1)?),
        y: to_bool(bits("y", 1)?),
        z: z_raw.iter().map(|&c| c % 2 == 1).collect(),
        eps,
        w: to_bool(bits("w", 1)?),
    })
}

/// Parses and validates a descriptor for the given mode.
pub fn parse_descriptor(text: &str, mode: Mode) -> Result<ManifoldDescriptor, ParseError> {
    let m = parse_descriptor_unchecked(text)?;
    let report = validate(&m, mode);
    if report.is_valid() {
        Ok(m)
    } else {
        Err(ParseError::Invalid(report))
    }
}

fn bits_line(name: &str, bits: &[bool]) -> String {
    let mut s = format!("{name}:");
    for &b in bits {
        s.push_str(if b { " 1" } else { " 0" });
    }
    s + "\n"
}

/// Writes a descriptor back in the input grammar.
pub fn render_descriptor(m: &ManifoldDescriptor) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "l = {}\nd = {}\nH = {}\nT = {}", m.l, m.d, m.h, m.t);
    let _ = writeln!(out, "spin = {}\nsmooth = {}\npd_mode = {}", m.spin, m.smooth, m.pd_mode);
    match &m.data {
        DescriptorData::Invariant(inv) => {
            let consumed: Vec<String> = inv.consumed.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "c1 = {}\nc2 = {}\nconsumed = [{}]\ncase = {}", inv.c1, inv.c2, consumed.join(", "), inv.case);
        }
        DescriptorData::Attaching { h_matrix, phi } => {
            out.push_str("[h_matrix]\n");
            for row in h_matrix.sphere.iter().chain(h_matrix.moore.iter().map(|r| &r.entries)) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
            out.push_str("[phi]\n");
            out.push_str(&bits_line("x", &phi.x));
            out.push_str(&bits_line("y", &phi.y));
            out.push_str(&bits_line("z", &phi.z));
            out.push_str(&bits_line("eps", &phi.eps));
            out.push_str(&bits_line("w", &phi.w));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ModeArg {
    #[default]
    Single,
    Double,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Single => Mode::Single,
            ModeArg::Double => Mode::Double,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Check {
    #[default]
    All,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// drop the top summand before the homology check
    Homology,
}

/// Suspension decompositions of 5-manifolds from homology and attaching data.
#[derive(Debug, Clone, Parser)]
#[command(name = "suspend5", version)]
pub struct RunConfig {
    /// descriptor files; stdin when none are given
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t)]
    pub check: Check,
    /// write the reports here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// show reduction traces and per-summand terms
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Oracles {
    pub homology: Verdict,
    pub k: Verdict,
    pub ko: Verdict,
    pub pi3: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub input: String,
    pub mode: Mode,
    pub ok: bool,
    pub error: Option<String>,
    pub violations: Vec<String>,
    pub c1: Option<u32>,
    pub c2: Option<u32>,
    pub consumed: Vec<usize>,
    pub case: Option<String>,
    pub case_label: Option<String>,
    pub remark_derived: bool,
    pub trace: Vec<String>,
    pub sections: Option<HomologySections>,
    pub decomposition: Option<Wedge>,
    #[serde(rename = "K")]
    pub k: Option<FgAbGroup>,
    #[serde(rename = "KO")]
    pub ko: Option<FgAbGroup>,
    pub pi3: Option<FgAbGroup>,
    pub pi3_crosscheck: Option<FgAbGroup>,
    pub cohomotopy_hurewicz: Vec<(u32, FgAbGroup)>,
    pub notes: Vec<String>,
    pub oracles: Oracles,
}

impl Report {
    fn empty(input: &str, mode: Mode) -> Report {
        Report {
            input: input.to_string(),
            mode,
            ok: false,
            error: None,
            violations: Vec::new(),
            c1: None,
            c2: None,
            consumed: Vec::new(),
            case: None,
            case_label: None,
            remark_derived: false,
            trace: Vec::new(),
            sections: None,
            decomposition: None,
            k: None,
            ko: None,
            pi3: None,
            pi3_crosscheck: None,
            cohomotopy_hurewicz: Vec::new(),
            notes: Vec::new(),
            oracles: Oracles { homology: Verdict::Skipped, k: Verdict::Skipped, ko: Verdict::Skipped, pi3: Verdict::Skipped },
        }
    }
}

/// Checks `H~_i(wedge) = H~_{i-shift}(M)` for every degree up to the top.
pub fn homology_oracle(m: &ManifoldDescriptor, w: &Wedge, shift: u32) -> bool {
    (0..=8).all(|i| {
        let expected = if i < shift + 1 { FgAbGroup::zero() } else { manifold_homology(m, i - shift) };
        wedge_homology(w, i) == expected
    })
}

/// Builds the full report for one descriptor text.
pub fn report_for(input: &str, text: &str, config: &RunConfig) -> Report {
    let mode: Mode = config.mode.into();
    let mut rep = Report::empty(input, mode);
    let m = match parse_descriptor_unchecked(text) {
        Ok(m) => m,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    let validation = validate(&m, mode);
    if !validation.is_valid() {
        rep.violations = validation.violations.iter().map(ToString::to_string).collect();
        rep.error = Some("invalid descriptor".into());
        return rep;
    }
    let res = match resolve(&m, mode) {
        Ok(r) => r,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    rep.c1 = Some(res.c1);
    rep.c2 = Some(res.c2);
    rep.consumed = res.consumed.clone();
    rep.case = Some(res.case.to_string());
    rep.case_label = Some(res.case.label().to_string());
    rep.remark_derived = res.remark_derived;
    rep.trace = res.trace.clone();
    if res.remark_derived {
        rep.notes.push("eta^2 and i eta^2 were both active; the eta^2 top cell absorbs the other".into());
    }
    if res.c1 + res.c2 > 0 {
        rep.notes.push("Sq^2 acts nontrivially on H^2(M; Z/2)".into());
    }
    rep.sections = homology_sections(&m, mode).ok();
    let mut w = match decomposition(&m, mode) {
        Ok(w) => w,
        Err(e) => {
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    if config.inject_fault == Some(Fault::Homology) {
        let mut parts = w.summands().to_vec();
        parts.pop();
        w = Wedge::new(parts);
    }
    rep.decomposition = Some(w.clone());

    let mut failed = false;
    let mut fail = |v: bool| {
        failed |= !v;
        if v {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    };
    let checks = config.check == Check::All;
    if checks {
        let shift = if mode == Mode::Single { 1 } else { 2 };
        rep.oracles.homology = fail(homology_oracle(&m, &w, shift));
    }
    match k_group(&m) {
        Ok(c) => {
            rep.notes.extend(c.notes().into_iter().map(|n| format!("K: {n}")));
            rep.k = Some(c.value);
            if checks {
                rep.oracles.k = fail(true);
            }
        }
        Err(e) => {
            rep.oracles.k = fail(false);
            rep.notes.push(format!("K: {e}"));
        }
    }
    match ko_group(&m) {
        Ok(c) => {
            rep.notes.extend(c.notes().into_iter().map(|n| format!("KO: {n}")));
            rep.ko = Some(c.value);
            if checks {
                rep.oracles.ko = fail(true);
            }
        }
        Err(e) => {
            rep.oracles.ko = fail(false);
            rep.notes.push(format!("KO: {e}"));
        }
    }
    match pi3(&m) {
        Ok(g) => {
            rep.pi3 = Some(g.clone());
            if checks {
                match pi4_sigma_crosscheck(&m) {
                    Ok(c) => {
                        rep.notes.extend(c.notes().into_iter().map(|n| format!("[Sigma M, S^4]: {n}")));
                        rep.oracles.pi3 = fail(c.value == g);
                        rep.pi3_crosscheck = Some(c.value);
                    }
                    Err(e) => {
                        rep.oracles.pi3 = fail(false);
                        rep.notes.push(format!("[Sigma M, S^4]: {e}"));
                    }
                }
            }
        }
        Err(e) => rep.notes.push(format!("pi^3: {e}")),
    }
    rep.cohomotopy_hurewicz = [1, 5].iter().filter_map(|&i| hurewicz_cohomotopy(&m, i).ok().map(|g| (i, g))).collect();
    rep.ok = !failed;
    rep
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), ToString::to_string)
}

pub fn render_human(rep: &Report, verbose: u8) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "== {} ({} suspension)", rep.input, rep.mode);
    if let Some(e) = &rep.error {
        let _ = writeln!(s, "error: {e}");
        for v in &rep.violations {
            let _ = writeln!(s, "  - {v}");
        }
        return s;
    }
    let _ = writeln!(s, "case: {} ({})", opt(&rep.case), opt(&rep.case_label));
    let _ = writeln!(s, "c1 = {}, c2 = {}, consumed = {:?}", opt(&rep.c1), opt(&rep.c2), rep.consumed);
    if let Some(sec) = &rep.sections {
        let _ = writeln!(s, "W3 = {}\nW4 = {}\nW5 = {}", sec.w3, sec.w4, sec.w5);
    }
    let label = if rep.mode == Mode::Single { "Sigma M" } else { "Sigma^2 M" };
    let _ = writeln!(s, "{label} = {}", opt(&rep.decomposition));
    let _ = writeln!(s, "K(M) = {}\nKO(M) = {}\npi^3(M) = {}", opt(&rep.k), opt(&rep.ko), opt(&rep.pi3));
    let o = &rep.oracles;
    let _ = writeln!(s, "oracles: homology {:?}, K {:?}, KO {:?}, pi3 {:?}", o.homology, o.k, o.ko, o.pi3);
    if verbose > 0 {
        for t in &rep.trace {
            let _ = writeln!(s, "  trace: {t}");
        }
    }
    for n in &rep.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

pub struct RunOutcome {
    pub reports: Vec<Report>,
    pub output: String,
    pub success: bool,
}

/// Runs every input; `stdin` is used when no paths are configured.
pub fn run(config: &RunConfig, stdin: Option<&str>) -> io::Result<RunOutcome> {
    let mut reports = Vec::new();
    if config.inputs.is_empty() {
        reports.push(report_for("<stdin>", stdin.unwrap_or(""), config));
    }
    for path in &config.inputs {
        let text = std::fs::read_to_string(path)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        reports.push(report_for(&path.display().to_string(), &text, config));
    }
    let output = match config.format {
        Format::Structured => serde_json::to_string_pretty(&reports).map_err(io::Error::other)? + "\n",
        Format::Human => reports.iter().map(|r| render_human(r, config.verbose)).collect::<Vec<_>>().join("\n"),
    };
    let success = reports.iter().all(|r| r.ok);
    Ok(RunOutcome { reports, output, success })
}
