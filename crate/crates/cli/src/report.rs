use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde_json::{Map, Number, Value};
use zetalab::exact::{fmt_rat, Poly, Rat};

#[derive(Clone, Debug, PartialEq)]
pub enum Val {
    Rat(Rat),
    Real(f64),
    Int(BigInt),
    Bool(bool),
    Str(String),
    List(Vec<Val>),
}

impl Val {
    pub fn int(n: impl Into<BigInt>) -> Val {
        Val::Int(n.into())
    }

    pub fn rats(p: &Poly) -> Val {
        Val::List(p.coeffs().iter().cloned().map(Val::Rat).collect())
    }

    pub fn complex(z: Complex64) -> Val {
        Val::List(vec![Val::Real(z.re), Val::Real(z.im)])
    }

    fn to_json(&self) -> Value {
        match self {
            Val::Rat(r) => Value::String(fmt_rat(r)),
            Val::Real(x) => real_json(*x),
            Val::Int(n) => Value::Number(n.to_string().parse::<Number>().expect("integer literal")),
            Val::Bool(b) => Value::Bool(*b),
            Val::Str(s) => Value::String(s.clone()),
            Val::List(v) => Value::Array(v.iter().map(Val::to_json).collect()),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Val::Rat(r) => fmt_rat(r),
            Val::Real(x) => real_text(*x),
            Val::Int(n) => n.to_string(),
            Val::Bool(b) => b.to_string(),
            Val::Str(s) => s.clone(),
            Val::List(v) => {
                let parts: Vec<String> = v.iter().map(Val::to_text).collect();
                format!("[{}]", parts.join(", "))
            }
        }
    }
}

/// Rounds to 12 significant digits.
fn real_text(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r: f64 = format!("{x:.11e}").parse().expect("float literal");
    // ryu shortest form of the rounded value
    let v = serde_json::to_string(&r).expect("finite float");
    if v == "-0.0" { "0.0".into() } else { v }
}

fn real_json(x: f64) -> Value {
    let s = real_text(x);
    if x.is_finite() {
        Value::Number(s.parse::<Number>().expect("float literal"))
    } else {
        Value::String(s)
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Val>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Val>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub fields: Vec<(String, Val)>,
    pub tables: Vec<Table>,
    /// `Some(false)` turns into exit code 1.
    pub ok: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.into(), fields: Vec::new(), tables: Vec::new(), ok: None }
    }

    pub fn field(&mut self, key: &str, v: Val) -> &mut Self {
        self.fields.push((key.into(), v));
        self
    }

    pub fn table(&mut self, t: Table) -> &mut Self {
        self.tables.push(t);
        self
    }

    pub fn set_ok(&mut self, ok: bool) {
        self.ok = Some(ok);
    }

    pub fn render(&self, fmt: Format) -> String {
        match fmt {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.clone()));
        if let Some(ok) = self.ok {
            root.insert("ok".into(), Value::Bool(ok));
        }
        let fields: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        root.insert("fields".into(), Value::Object(fields));
        let mut tables = Map::new();
        for t in &self.tables {
            let mut o = Map::new();
            o.insert("columns".into(), Value::Array(t.columns.iter().cloned().map(Value::String).collect()));
            let rows = t.rows.iter().map(|r| Value::Array(r.iter().map(Val::to_json).collect())).collect();
            o.insert("rows".into(), Value::Array(rows));
            tables.insert(t.name.clone(), Value::Object(o));
        }
        root.insert("tables".into(), Value::Object(tables));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json");
        s.push('\n');
        s
    }

    fn csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record(["field", "value"]).expect("csv");
        w.write_record(["command", &self.command]).expect("csv");
        if let Some(ok) = self.ok {
            w.write_record(["ok", &ok.to_string()]).expect("csv");
        }
        for (k, v) in &self.fields {
            w.write_record([k.as_str(), &v.to_text()]).expect("csv");
        }
        for t in &self.tables {
            w.write_record([""]).expect("csv");
            w.write_record([format!("# {}", t.name)]).expect("csv");
            w.write_record(&t.columns).expect("csv");
            for r in &t.rows {
                w.write_record(r.iter().map(Val::to_text)).expect("csv");
            }
        }
        String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
    }

    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.command).unwrap();
        if let Some(ok) = self.ok {
            writeln!(s, "  ok: {ok}").unwrap();
        }
        for (k, v) in &self.fields {
            writeln!(s, "  {k}: {}", v.to_text()).unwrap();
        }
        for t in &self.tables {
            writeln!(s, "\n{}", t.name).unwrap();
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Val::to_text).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([t.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |row: &[String]| {
                let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                parts.join("  ").trim_end().to_string()
            };
            writeln!(s, "{}", line(&t.columns)).unwrap();
            for r in &cells {
                writeln!(s, "{}", line(r)).unwrap();
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use zetalab::exact::rat;

    #[test]
    fn reals_and_rationals() {
        assert_eq!(real_text(1.0 / 3.0), "0.333333333333");
        assert_eq!(real_text(6.97452e-6), "6.97452e-6");
        assert_eq!(real_text(f64::INFINITY), "inf");
        assert_eq!(real_text(-0.0), "0.0");
        assert_eq!(Val::Rat(rat(9, 4)).to_json(), Value::String("9/4".into()));
        assert_eq!(Val::Rat(rat(3, 1)).to_text(), "3/1");
        assert_eq!(Val::int(12).to_json().to_string(), "12");
    }

    #[test]
    fn formats_agree_on_content() {
        let mut r = Report::new("demo");
        r.field("x", Val::Real(0.5));
        let mut t = Table::new("rows", &["a", "b"]);
        t.push(vec![Val::int(1), Val::Str("p, q".into())]);
        r.table(t);
        let j: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(j["tables"]["rows"]["rows"][0][1], "p, q");
        assert!(r.render(Format::Csv).contains("\"p, q\""));
        assert!(r.render(Format::Text).contains("x: 0.5"));
    }
}
