//! Rendering of results in the four output formats. All numbers in JSON
//! are strings carrying exact rationals or polynomials, never floats.

use clap::ValueEnum;
use hilbsegre_core::errata::Erratum;
use hilbsegre_core::families::{FactSource, FamilyReport, FamilySpec};
use hilbsegre_core::poly::parse_poly;
use hilbsegre_core::positivity::Certificate;
use hilbsegre_core::tautsegre::{IdentityReport, SegreDto, TautBundle, TautSegreResult};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Tex,
}

// ---------------------------------------------------------------------------
// segre
// ---------------------------------------------------------------------------

pub struct SegreOutput {
    dto: SegreDto,
    tex: String,
    top_only: bool,
}

impl SegreOutput {
    pub fn new(
        family: String,
        spec: Option<FamilySpec>,
        symbolic: bool,
        result: &TautSegreResult,
        bundle: &TautBundle,
        top_only: bool,
    ) -> SegreOutput {
        let mut params = BTreeMap::new();
        if let Some(spec) = &spec {
            for (name, v) in [
                ("g", spec.g),
                ("n", spec.n),
                ("r", spec.r),
                ("d", spec.d),
                ("a", spec.a),
                ("h", spec.h),
            ] {
                if let Some(v) = v {
                    params.insert(name.to_string(), v);
                }
            }
        }
        SegreOutput {
            dto: result.to_dto(family, params, symbolic, &bundle.model, !top_only),
            tex: result.top_integral.to_tex(),
            top_only,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&self.dto),
            Format::Tex => format!("{}\n", self.tex),
            Format::Csv => {
                let mut out = String::from("k,d,value,provenance\n");
                for c in &self.dto.classes {
                    let _ = writeln!(
                        out,
                        "{},{},\"{}\",{}",
                        self.dto.k,
                        c.d,
                        c.lines.join("; "),
                        self.dto.provenance
                    );
                }
                let _ = writeln!(
                    out,
                    "{},{},\"{}\",{}",
                    self.dto.k,
                    2 * self.dto.k,
                    self.dto.integral,
                    self.dto.provenance
                );
                out
            }
            Format::Text => {
                let mut out = String::new();
                if !self.top_only {
                    for c in &self.dto.classes {
                        let _ = writeln!(out, "s_{}(F^[{}]):", c.d, self.dto.k);
                        for l in &c.lines {
                            let _ = writeln!(out, "  {l}");
                        }
                    }
                    let _ = write!(out, "top integral: ");
                }
                let _ = writeln!(out, "{}", self.dto.integral);
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// family
// ---------------------------------------------------------------------------

fn source_str(s: FactSource) -> &'static str {
    match s {
        FactSource::Computed => "computed",
        FactSource::Cited => "cited",
    }
}

pub fn render_family(report: &FamilyReport, format: Format) -> String {
    let dto = report.to_dto();
    match format {
        Format::Json => to_json(&dto),
        Format::Csv => {
            let mut out = String::from("name,value,source,anchor\n");
            for f in &dto.facts {
                let _ = writeln!(
                    out,
                    "{},{},{},\"{}\"",
                    f.name,
                    f.value,
                    source_str(f.source),
                    f.anchor
                );
            }
            out
        }
        Format::Tex => {
            let mut out = String::new();
            let tex_of = |s: &str| {
                parse_poly(s)
                    .map(|p| p.to_tex())
                    .unwrap_or_else(|_| s.to_string())
            };
            let _ = writeln!(
                out,
                "v = ({}, {}, {})",
                tex_of(&dto.mukai[0]),
                tex_of(&dto.mukai[1]),
                tex_of(&dto.mukai[2]),
            );
            let _ = writeln!(out, "\\chi = {}", report.chi.to_tex());
            let _ = writeln!(out, "\\dim M = {}", report.moduli_dim.to_tex());
            out
        }
        Format::Text => {
            let mut out = String::new();
            let params: Vec<String> = dto.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "family {} [{}]", dto.family, params.join(", "));
            let _ = writeln!(out, "  rank   = {}", dto.rank);
            let _ = writeln!(out, "  c1     = {} * H", dto.lambda);
            let _ = writeln!(out, "  int c2 = {}", dto.c2);
            let _ = writeln!(
                out,
                "  mukai  = ({}, {}, {})",
                dto.mukai[0], dto.mukai[1], dto.mukai[2]
            );
            let _ = writeln!(out, "  chi    = {}", dto.chi);
            if let Some(h0) = &dto.h0 {
                let _ = writeln!(out, "  h0     = {h0}");
            }
            let _ = writeln!(out, "  moduli dim = {}", dto.moduli_dim);
            let _ = writeln!(out, "  facts:");
            for f in &dto.facts {
                let _ = writeln!(
                    out,
                    "    {:<22} {:<16} [{}] {}",
                    f.name,
                    f.value,
                    source_str(f.source),
                    f.anchor
                );
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// certificates, identities, errata
// ---------------------------------------------------------------------------

pub fn render_certificate(cert: &Certificate, format: Format) -> String {
    match format {
        Format::Json => to_json(cert),
        Format::Csv => {
            let mut out = String::from("param,pass,fact,value\n");
            for leg in &cert.legs {
                for f in &leg.facts {
                    let _ = writeln!(
                        out,
                        "\"{}\",{},{},\"{}\"",
                        leg.param, leg.pass, f.name, f.value
                    );
                }
            }
            let _ = writeln!(out, "verdict,{},,", cert.verdict);
            out
        }
        Format::Text | Format::Tex => cert.summary(),
    }
}

pub fn render_identities(report: &IdentityReport, format: Format) -> String {
    let pass = report.checks.iter().filter(|c| c.pass).count();
    match format {
        Format::Json => to_json(&report.to_dtos()),
        Format::Csv => {
            let mut out = String::from("label,pass\n");
            for c in &report.checks {
                let _ = writeln!(out, "\"{}\",{}", c.label, c.pass);
            }
            out
        }
        Format::Text | Format::Tex => {
            let mut out = String::new();
            for c in &report.checks {
                let _ = writeln!(out, "{}  {}", if c.pass { "ok  " } else { "FAIL" }, c.label);
                if !c.pass {
                    let _ = writeln!(out, "  lhs: {}", c.lhs_dump.trim_end());
                    let _ = writeln!(out, "  rhs: {}", c.rhs_dump.trim_end());
                }
            }
            let _ = writeln!(out, "{pass}/{} pass", report.checks.len());
            out
        }
    }
}

pub fn render_errata(errata: &[Erratum], format: Format) -> String {
    match format {
        Format::Json => to_json(&errata),
        Format::Csv => {
            let mut out = String::from("id,confirmed,summary\n");
            for e in errata {
                let _ = writeln!(out, "{},{},\"{}\"", e.id, e.confirmed, e.summary);
            }
            out
        }
        Format::Text | Format::Tex => {
            let mut out = String::from("detected errata:\n");
            for e in errata {
                let _ = writeln!(
                    out,
                    "- [{}] {}\n    printed:  {}\n    computed: {}\n    {}",
                    e.id,
                    e.summary,
                    e.printed,
                    e.computed,
                    if e.confirmed {
                        "status: confirmed by the engine"
                    } else {
                        "status: NOT confirmed (investigate)"
                    }
                );
            }
            out
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
