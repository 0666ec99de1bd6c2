//! Report documents and their JSON, CSV and text renderings.
//!
//! Timing lives only in `per_e[].ms` so golden comparisons can mask it.

use std::fmt::Write as _;

use frobex_core::cartier::level_estimate;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Serializes `-inf` as the string `"-inf"`; finite values as numbers.
mod estimate {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if *v == f64::NEG_INFINITY {
            Repr::Text("-inf".into()).serialize(s)
        } else {
            Repr::Number(*v).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(v) => Ok(v),
            Repr::Text(t) if t == "-inf" => Ok(f64::NEG_INFINITY),
            Repr::Text(t) => Err(serde::de::Error::custom(format!(
                "unexpected estimate `{t}`"
            ))),
        }
    }
}

pub fn format_real(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDoc {
    pub e: u32,
    pub c_e: u64,
    pub d_e: u64,
    pub ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundDoc {
    pub l: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityDoc {
    pub digest: String,
    pub p: u64,
    pub n: usize,
    pub dim: usize,
    pub per_e: Vec<LevelDoc>,
    #[serde(with = "estimate")]
    pub exponent_estimate: f64,
    pub bound: BoundDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub digest: String,
    #[serde(with = "estimate")]
    pub estimate: f64,
    pub l: f64,
    pub n: usize,
    pub dim: usize,
    pub rhs: f64,
    pub slack: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub e: u32,
    pub e_prime: u32,
    pub generator: Option<String>,
}

/// Output of each command.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Output {
    Basis {
        digest: String,
        order: String,
        basis: Vec<String>,
    },
    Generators {
        digest: String,
        operation: String,
        generators: Vec<String>,
    },
    MinimalGenerators {
        digest: String,
        generators: Vec<String>,
        generating_degree: u64,
    },
    Dimension {
        digest: String,
        dim: usize,
    },
    Hilbert {
        digest: String,
        values: Vec<u64>,
    },
    Fedder {
        digest: String,
        e: u32,
        fpure: bool,
    },
    FGraded {
        digest: String,
        horizon: u32,
        ok: bool,
        witness: Option<WitnessDoc>,
    },
    Complexity(ComplexityDoc),
    Verdict(VerdictDoc),
}

impl ComplexityDoc {
    pub fn csv(&self) -> String {
        let mut s = String::from("e,c_e,d_e,log_p(c_e)/e,ms\n");
        for r in &self.per_e {
            let est = level_estimate(self.p, r.e, r.c_e);
            writeln!(
                s,
                "{},{},{},{},{}",
                r.e,
                r.c_e,
                r.d_e,
                format_real(est),
                r.ms
            )
            .unwrap();
        }
        s
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "p = {}, n = {}, dim R = {}", self.p, self.n, self.dim).unwrap();
        writeln!(
            s,
            "{:>3} {:>10} {:>8} {:>20} {:>8}",
            "e", "c_e", "d_e", "log_p(c_e)/e", "ms"
        )
        .unwrap();
        for r in &self.per_e {
            let est = level_estimate(self.p, r.e, r.c_e);
            writeln!(
                s,
                "{:>3} {:>10} {:>8} {:>20} {:>8}",
                r.e,
                r.c_e,
                r.d_e,
                format_real(est),
                r.ms
            )
            .unwrap();
        }
        writeln!(
            s,
            "exponent estimate: {}",
            format_real(self.exponent_estimate)
        )
        .unwrap();
        writeln!(
            s,
            "bound: l = {}, rhs = {}, {}",
            format_real(self.bound.l),
            format_real(self.bound.rhs),
            if self.bound.ok { "ok" } else { "VIOLATED" }
        )
        .unwrap();
        s
    }
}

fn key_values(rows: &[(&str, String)]) -> (String, String) {
    let mut csv = String::from("key,value\n");
    let mut text = String::new();
    for (k, v) in rows {
        let quoted = if v.contains(',') || v.contains('"') {
            format!("\"{}\"", v.replace('"', "\"\""))
        } else {
            v.clone()
        };
        writeln!(csv, "{k},{quoted}").unwrap();
        writeln!(text, "{k}: {v}").unwrap();
    }
    (csv, text)
}

impl Output {
    fn rows(&self) -> Vec<(&'static str, String)> {
        let list = |v: &[String]| v.join(", ");
        match self {
            Output::Basis {
                digest,
                order,
                basis,
            } => {
                vec![
                    ("digest", digest.clone()),
                    ("order", order.clone()),
                    ("basis", list(basis)),
                ]
            }
            Output::Generators {
                digest,
                operation,
                generators,
            } => vec![
                ("digest", digest.clone()),
                ("operation", operation.clone()),
                ("generators", list(generators)),
            ],
            Output::MinimalGenerators {
                digest,
                generators,
                generating_degree,
            } => vec![
                ("digest", digest.clone()),
                ("generators", list(generators)),
                ("generating_degree", generating_degree.to_string()),
            ],
            Output::Dimension { digest, dim } => {
                vec![("digest", digest.clone()), ("dim", dim.to_string())]
            }
            Output::Hilbert { digest, values } => {
                let v: Vec<String> = values.iter().map(u64::to_string).collect();
                vec![("digest", digest.clone()), ("values", list(&v))]
            }
            Output::Fedder { digest, e, fpure } => {
                vec![
                    ("digest", digest.clone()),
                    ("e", e.to_string()),
                    ("fpure", fpure.to_string()),
                ]
            }
            Output::FGraded {
                digest,
                horizon,
                ok,
                witness,
            } => {
                let mut rows = vec![
                    ("digest", digest.clone()),
                    ("horizon", horizon.to_string()),
                    ("ok", ok.to_string()),
                ];
                if let Some(w) = witness {
                    rows.push(("witness_e", w.e.to_string()));
                    rows.push(("witness_e_prime", w.e_prime.to_string()));
                    rows.push(("witness_generator", w.generator.clone().unwrap_or_default()));
                }
                rows
            }
            Output::Verdict(v) => vec![
                ("digest", v.digest.clone()),
                ("estimate", format_real(v.estimate)),
                ("l", format_real(v.l)),
                ("n", v.n.to_string()),
                ("dim", v.dim.to_string()),
                ("rhs", format_real(v.rhs)),
                ("slack", format_real(v.slack)),
                ("ok", v.ok.to_string()),
            ],
            Output::Complexity(_) => unreachable!("rendered as a table"),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (_, Format::Json) => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
            (Output::Complexity(doc), Format::Csv) => doc.csv(),
            (Output::Complexity(doc), Format::Text) => doc.text(),
            (_, Format::Csv) => key_values(&self.rows()).0,
            (_, Format::Text) => key_values(&self.rows()).1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(per_e: Vec<LevelDoc>, estimate: f64) -> ComplexityDoc {
        ComplexityDoc {
            digest: "abc".into(),
            p: 2,
            n: 1,
            dim: 0,
            per_e,
            exponent_estimate: estimate,
            bound: BoundDoc {
                l: 1.0,
                rhs: 0.0,
                ok: true,
            },
        }
    }

    #[test]
    fn json_round_trips_including_minus_infinity() {
        for est in [f64::NEG_INFINITY, 1.584962500721156, 0.0] {
            let doc = Output::Complexity(sample(
                vec![LevelDoc {
                    e: 1,
                    c_e: 3,
                    d_e: 4,
                    ms: 7,
                }],
                est,
            ));
            let text = doc.render(Format::Json);
            let back: ComplexityDoc = serde_json::from_str(&text).unwrap();
            assert_eq!(Output::Complexity(back), doc);
        }
        let empty = Output::Complexity(sample(vec![], f64::NEG_INFINITY));
        let v: serde_json::Value = serde_json::from_str(&empty.render(Format::Json)).unwrap();
        assert_eq!(v["per_e"], serde_json::json!([]));
        assert_eq!(v["exponent_estimate"], "-inf");
    }

    #[test]
    fn csv_rows_for_univariate_example() {
        let doc = sample(
            vec![
                LevelDoc {
                    e: 1,
                    c_e: 1,
                    d_e: 2,
                    ms: 0,
                },
                LevelDoc {
                    e: 2,
                    c_e: 0,
                    d_e: 6,
                    ms: 0,
                },
            ],
            f64::NEG_INFINITY,
        );
        let csv = doc.csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "e,c_e,d_e,log_p(c_e)/e,ms");
        assert_eq!(lines[1], "1,1,2,0.0,0");
        assert_eq!(lines[2], "2,0,6,-inf,0");
    }

    #[test]
    fn key_value_outputs() {
        let out = Output::Dimension {
            digest: "d".into(),
            dim: 3,
        };
        assert_eq!(out.render(Format::Csv), "key,value\ndigest,d\ndim,3\n");
        assert_eq!(out.render(Format::Text), "digest: d\ndim: 3\n");
        let out = Output::Basis {
            digest: "d".into(),
            order: "grevlex".into(),
            basis: vec!["x".into(), "y".into()],
        };
        assert!(out.render(Format::Csv).contains("basis,\"x, y\""));
    }
}
