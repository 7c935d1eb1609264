use serde_json::{json, Map, Value};

use crate::coeff::{Coefficient, Mode};
use crate::flow::{FlowFamily, ObstructionCertificate};
use crate::linearize::{ResonanceWitness, SquareMatrix};
use crate::series::{FormalSeries, GermMap};

use super::lower::Layout;
use super::{CliError, OutputFormat, RunConfig};

/// Identifier of the JSON output schema shipped in `schema/`.
pub const SCHEMA_ID: &str = "germflow-output.v1";

/// Accumulated result of one command, rendered at the end as text or JSON.
#[derive(Debug)]
pub struct Report {
    command: &'static str,
    mode: Mode,
    order: u32,
    status: &'static str,
    message: Option<String>,
    warnings: Vec<String>,
    variables: Option<Vec<String>>,
    series: Option<Vec<FormalSeries>>,
    certificate: Option<Value>,
    certificate_text: Option<String>,
    flow: Option<Value>,
    flow_text: Option<String>,
    witnesses: Option<Vec<ResonanceWitness>>,
    multipliers: Option<Vec<Coefficient>>,
    norm: Option<f64>,
    matrix: Option<SquareMatrix>,
}

fn series_json(s: &FormalSeries) -> Value {
    Value::Array(
        s.terms()
            .map(|(k, c)| json!({ "exponents": k.exponents(), "coeff": c.render() }))
            .collect(),
    )
}

fn components_json(comps: &[FormalSeries]) -> Value {
    Value::Array(comps.iter().map(series_json).collect())
}

fn render_components(comps: &[FormalSeries], names: &[&str]) -> Vec<String> {
    comps.iter().map(|c| c.render(names)).collect()
}

fn mode_name(mode: Mode) -> &'static str {
    if mode.is_exact() {
        "exact"
    } else {
        "float"
    }
}

impl Report {
    pub fn new(config: &RunConfig) -> Self {
        Report {
            command: config.command.name(),
            mode: config.mode,
            order: config.order,
            status: "ok",
            message: None,
            warnings: Vec::new(),
            variables: None,
            series: None,
            certificate: None,
            certificate_text: None,
            flow: None,
            flow_text: None,
            witnesses: None,
            multipliers: None,
            norm: None,
            matrix: None,
        }
    }

    pub fn fail(&mut self, e: &CliError) {
        self.status = "error";
        self.message = Some(e.to_string());
    }

    pub fn warn(&mut self, w: String) {
        self.warnings.push(w);
    }

    pub fn set_mode(&mut self, mode: Mode) {
        self.mode = mode;
    }

    pub fn set_series(&mut self, comps: &[FormalSeries], layout: &Layout) {
        self.variables = Some(layout.names.clone());
        self.series = Some(comps.to_vec());
    }

    pub fn set_multipliers(&mut self, m: &[Coefficient]) {
        self.multipliers = Some(m.to_vec());
    }

    pub fn set_witnesses(&mut self, w: &[ResonanceWitness]) {
        self.witnesses = Some(w.to_vec());
    }

    pub fn set_norm(&mut self, norm: f64) {
        self.norm = Some(norm);
    }

    pub fn set_matrix(&mut self, m: &SquareMatrix) {
        self.matrix = Some(m.clone());
    }

    pub fn set_certificate(&mut self, c: &ObstructionCertificate, layout: &Layout) {
        self.status = "obstruction";
        self.variables = Some(layout.names.clone());
        let names = layout.name_refs();
        let prefix = c.forced_prefix.components();
        self.certificate = Some(json!({
            "degree": c.degree,
            "component": c.component,
            "exponents": c.exponents.exponents(),
            "alpha": c.alpha.render(),
            "beta": c.beta.render(),
            "branch": c.branch,
            "root_order": c.root_order,
            "linear_root": c.linear_root.iter().map(Coefficient::render).collect::<Vec<_>>(),
            "forced_prefix": components_json(prefix),
            "free_choices": c.free_choices.iter()
                .map(|(s, m)| json!({ "component": s, "exponents": m.exponents() }))
                .collect::<Vec<_>>(),
        }));
        let mono = crate::series::FormalSeries::monomial(
            c.exponents.nvars(),
            c.degree,
            c.exponents.clone(),
            Coefficient::one(),
        )
        .render(&names);
        let mut text = format!(
            "no iterative root of order {} (branch {}): at degree {}, the coefficient of {} in component {} satisfies {}*c = {}\n",
            c.root_order,
            c.branch,
            c.degree,
            mono,
            c.component + 1,
            c.alpha.render(),
            c.beta.render()
        );
        text.push_str(&format!(
            "linear root: {}\n",
            c.linear_root.iter().map(Coefficient::render).collect::<Vec<_>>().join(", ")
        ));
        text.push_str("forced prefix:\n");
        for line in render_components(prefix, &names) {
            text.push_str(&format!("  {line}\n"));
        }
        self.certificate_text = Some(text);
    }

    pub fn set_flow(&mut self, family: &FlowFamily, layout: &Layout) {
        let names = layout.name_refs();
        self.variables = Some(layout.names.clone());
        let (value, text) = match family {
            FlowFamily::Hyperbolic { f, multipliers, .. } => (
                json!({
                    "kind": "hyperbolic",
                    "multipliers": multipliers.iter().map(Coefficient::render).collect::<Vec<_>>(),
                    "conjugacy": components_json(f.components()),
                }),
                format!(
                    "hyperbolic flow: phi^t = f^-1(Lambda^t f), Lambda = diag({})\nf = {}\n",
                    multipliers.iter().map(Coefficient::render).collect::<Vec<_>>().join(", "),
                    join_components(f, &names)
                ),
            ),
            FlowFamily::Parabolic { v } => (
                json!({
                    "kind": "parabolic",
                    "generator": components_json(v.components()),
                }),
                format!(
                    "parabolic flow: phi^t = exp(t v)\nv = {}\n",
                    join_components(&v.clone().into_germ_unchecked(), &names)
                ),
            ),
        };
        self.flow = Some(value);
        self.flow_text = Some(text);
    }

    fn json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA_ID));
        m.insert("command".into(), json!(self.command));
        m.insert("status".into(), json!(self.status));
        m.insert("mode".into(), json!(mode_name(self.mode)));
        m.insert("order".into(), json!(self.order));
        m.insert("variables".into(), json!(self.variables));
        m.insert(
            "series".into(),
            self.series.as_deref().map(components_json).unwrap_or(Value::Null),
        );
        m.insert(
            "rendered".into(),
            match (&self.series, &self.variables) {
                (Some(s), Some(v)) => {
                    let names: Vec<&str> = v.iter().map(String::as_str).collect();
                    json!(render_components(s, &names))
                }
                _ => Value::Null,
            },
        );
        m.insert("certificate".into(), self.certificate.clone().unwrap_or(Value::Null));
        m.insert("flow".into(), self.flow.clone().unwrap_or(Value::Null));
        m.insert(
            "witnesses".into(),
            self.witnesses
                .as_ref()
                .map(|w| {
                    Value::Array(
                        w.iter()
                            .map(|w| json!({ "s": w.s, "m": w.m.exponents() }))
                            .collect(),
                    )
                })
                .unwrap_or(Value::Null),
        );
        m.insert(
            "multipliers".into(),
            self.multipliers
                .as_ref()
                .map(|v| json!(v.iter().map(Coefficient::render).collect::<Vec<_>>()))
                .unwrap_or(Value::Null),
        );
        m.insert("norm".into(), self.norm.map(|n| json!(n)).unwrap_or(Value::Null));
        m.insert(
            "matrix".into(),
            self.matrix.as_ref().map(|x| json!(x.render_rows())).unwrap_or(Value::Null),
        );
        m.insert("warnings".into(), json!(self.warnings));
        m.insert("message".into(), json!(self.message));
        Value::Object(m)
    }

    fn text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.certificate_text {
            out.push_str(c);
        }
        if let Some(f) = &self.flow_text {
            out.push_str(f);
        }
        if let Some(m) = &self.multipliers {
            out.push_str(&format!(
                "multipliers: {}\n",
                m.iter().map(Coefficient::render).collect::<Vec<_>>().join(", ")
            ));
        }
        if let Some(w) = &self.witnesses {
            if w.is_empty() {
                out.push_str("no resonances\n");
            }
            for w in w {
                out.push_str(&format!("{w}\n"));
            }
        }
        if let Some(n) = self.norm {
            out.push_str(&format!("||J - E||_F = {n}\n"));
        }
        if let Some(m) = &self.matrix {
            out.push_str(&format!("{m}\n"));
        }
        if let (Some(s), Some(v)) = (&self.series, &self.variables) {
            let names: Vec<&str> = v.iter().map(String::as_str).collect();
            let lines = render_components(s, &names);
            if lines.len() == 1 {
                out.push_str(&format!("{}\n", lines[0]));
            } else {
                for (name, line) in v.iter().zip(lines) {
                    out.push_str(&format!("{name}' = {line}\n"));
                }
            }
        }
        out
    }

    /// (stdout, stderr) for the chosen format. Errors and warnings go to
    /// stderr in text mode and into the document in JSON mode.
    pub fn render(&self, format: OutputFormat) -> (String, String) {
        match format {
            OutputFormat::Json => {
                let s = serde_json::to_string_pretty(&self.json()).expect("serializable");
                (format!("{s}\n"), String::new())
            }
            OutputFormat::Text => {
                let mut err = String::new();
                for w in &self.warnings {
                    err.push_str(&format!("warning: {w}\n"));
                }
                if let Some(m) = &self.message {
                    err.push_str(&format!("error: {m}\n"));
                }
                (self.text(), err)
            }
        }
    }
}

fn join_components(g: &GermMap, names: &[&str]) -> String {
    let parts = g.render(Some(names));
    if parts.len() == 1 {
        parts[0].clone()
    } else {
        format!("({})", parts.join(", "))
    }
}
