//! Rendering of results as text, CSV or JSON. Terms are always emitted in
//! the canonical sorted order of the underlying maps.

use clap::ValueEnum;
use serde::Serialize;
use wop_core::verify::SuiteReport;
use wop_core::{
    CycleTuple, HurwitzTable, PMonomial, PPolynomial, Partition, TupleClassification, XPolynomial,
    ZSeries,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Serialize)]
struct Term<M> {
    coeff: String,
    monomial: M,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<u32>,
}

#[derive(Serialize)]
struct Terms<M> {
    terms: Vec<Term<M>>,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes") + "\n"
}

fn pairs(m: &PMonomial) -> Vec<[u32; 2]> {
    m.pairs().iter().map(|&(k, e)| [k, e]).collect()
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn polynomial(f: &PPolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{f}\n"),
        Format::Json => json(&Terms {
            terms: f
                .terms()
                .map(|(m, c)| Term {
                    coeff: c.to_string(),
                    monomial: pairs(m),
                    z: None,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = String::from("coeff,monomial\n");
            for (m, c) in f.terms() {
                out += &format!("{c},{m}\n");
            }
            out
        }
    }
}

pub fn xpolynomial(f: &XPolynomial, format: Format) -> String {
    match format {
        Format::Text => format!("{f}\n"),
        Format::Json => json(&Terms {
            terms: f
                .terms()
                .map(|(m, c)| Term {
                    coeff: c.to_string(),
                    monomial: m
                        .pairs()
                        .iter()
                        .map(|&((a, b), e)| [a, b, e as usize])
                        .collect::<Vec<_>>(),
                    z: None,
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = String::from("coeff,monomial\n");
            for (m, c) in f.terms() {
                out += &format!("{c},{m}\n");
            }
            out
        }
    }
}

pub fn series(s: &ZSeries, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = String::new();
            for (k, m, c) in s.terms() {
                out += &format!("z^{k} {m}: {c}\n");
            }
            out
        }
        Format::Json => json(&Terms {
            terms: s
                .terms()
                .map(|(k, m, c)| Term {
                    coeff: c.to_string(),
                    monomial: pairs(m),
                    z: Some(k),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = String::from("z,monomial,coeff\n");
            for (k, m, c) in s.terms() {
                out += &format!("{k},{m},{c}\n");
            }
            out
        }
    }
}

fn alpha_label(a: &Partition) -> String {
    format!("({})", a.exponent_notation())
}

#[derive(Serialize)]
struct HurwitzRow {
    n: u32,
    d: u32,
    k: u32,
    alpha: String,
    h: u128,
    hhat: u128,
}

pub fn hurwitz(t: &HurwitzTable, format: Format) -> String {
    let rows: Vec<HurwitzRow> = t
        .rows()
        .into_iter()
        .map(|(a, h, hhat)| HurwitzRow {
            n: t.n,
            d: t.d,
            k: t.k,
            alpha: alpha_label(&a),
            h,
            hhat,
        })
        .collect();
    match format {
        Format::Json => json(&serde_json::json!({ "rows": rows })),
        Format::Csv => {
            let mut out = String::from("n,d,k,alpha,h,hhat\n");
            for r in &rows {
                out += &format!(
                    "{},{},{},{},{},{}\n",
                    r.n,
                    r.d,
                    r.k,
                    csv_escape(&r.alpha),
                    r.h,
                    r.hhat
                );
            }
            out
        }
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.alpha.chars().count())
                .max()
                .unwrap_or(5)
                .max(5);
            let mut out = format!("{:<width$}  {:>12}  {:>12}\n", "alpha", "h", "hhat");
            for r in &rows {
                out += &format!("{:<width$}  {:>12}  {:>12}\n", r.alpha, r.h, r.hhat);
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ReportRow<'a> {
    suite: &'a str,
    passed: bool,
    checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<&'a str>,
}

pub fn reports(reports: &[SuiteReport], format: Format) -> String {
    let rows: Vec<ReportRow> = reports
        .iter()
        .map(|r| ReportRow {
            suite: r.suite.name(),
            passed: r.passed(),
            checks: r.checks,
            counterexample: r.failure.as_deref(),
        })
        .collect();
    match format {
        Format::Json => json(&serde_json::json!({ "suites": rows })),
        Format::Csv => {
            let mut out = String::from("suite,passed,checks,counterexample\n");
            for r in &rows {
                out += &format!(
                    "{},{},{},{}\n",
                    r.suite,
                    r.passed,
                    r.checks,
                    csv_escape(r.counterexample.unwrap_or(""))
                );
            }
            out
        }
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
    }
}

#[derive(Serialize)]
struct Classification {
    tuple: Vec<usize>,
    tau: String,
    distances: Vec<usize>,
    merged_lengths: Vec<usize>,
    product_type: String,
}

pub fn classification(
    tuple: &CycleTuple,
    class: &TupleClassification,
    image: &Partition,
    format: Format,
) -> String {
    let row = Classification {
        tuple: tuple.points().to_vec(),
        tau: class.type_tau.to_string(),
        distances: class.distances.clone(),
        merged_lengths: class.merged_lengths(),
        product_type: alpha_label(image),
    };
    let list = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    match format {
        Format::Json => json(&row),
        Format::Csv => format!(
            "tuple,tau,distances,merged_lengths,product_type\n{},{},{},{},{}\n",
            csv_escape(&list(&row.tuple)),
            csv_escape(&row.tau),
            csv_escape(&list(&row.distances)),
            csv_escape(&list(&row.merged_lengths)),
            csv_escape(&row.product_type)
        ),
        Format::Text => format!(
            "tuple {tuple}\ntau {}\ndistances {}\nmerged lengths {}\nproduct type {}\n",
            row.tau,
            list(&row.distances),
            list(&row.merged_lengths),
            row.product_type
        ),
    }
}
