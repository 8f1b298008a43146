// Copyright 2026 The triwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! CSV and JSON renderings. Floats are written in shortest round-trip form.

use serde::Serialize;

use triwit_core::{Certification, DetectionRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

pub const SCAN_HEADER: &str = "family,param_a,param_b,param_c,witness,expectation,detected,ppt_q1,ppt_q2,ppt_q3";

pub fn num(x: f64) -> String {
    format!("{x:?}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Flat record shared by the CSV and JSON scan outputs.
#[derive(Debug, Serialize)]
pub struct Row<'a> {
    pub family: &'a str,
    pub param_a: Option<f64>,
    pub param_b: Option<f64>,
    pub param_c: Option<f64>,
    pub witness: &'a str,
    pub expectation: f64,
    pub detected: bool,
    pub ppt_q1: bool,
    pub ppt_q2: bool,
    pub ppt_q3: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<f64>,
}

impl<'a> From<&'a DetectionRecord> for Row<'a> {
    fn from(r: &'a DetectionRecord) -> Self {
        Row {
            family: &r.family,
            param_a: r.param("a"),
            param_b: r.param("b"),
            param_c: r.param("c"),
            witness: &r.witness,
            expectation: r.expectation,
            detected: r.detected,
            ppt_q1: r.ppt[0],
            ppt_q2: r.ppt[1],
            ppt_q3: r.ppt[2],
            closed_form: r.closed_form,
        }
    }
}

impl Row<'_> {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.family,
            opt(self.param_a),
            opt(self.param_b),
            opt(self.param_c),
            self.witness,
            num(self.expectation),
            self.detected,
            self.ppt_q1,
            self.ppt_q2,
            self.ppt_q3
        )
    }
}

pub fn records(records: &[DetectionRecord], format: OutputFormat) -> String {
    let rows: Vec<Row<'_>> = records.iter().map(Row::from).collect();
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(SCAN_HEADER);
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
            out
        }
    }
}

pub const CERTIFY_HEADER: &str =
    "witness,max_angle_objective,min_expectation,pass,evaluations,converged,theta1,theta2,theta3,phi1,phi2,phi3";

pub fn certifications(reports: &[Certification], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(CERTIFY_HEADER);
            out.push('\n');
            for c in reports {
                let angles: Vec<String> = c.best_angles.iter().map(|&x| num(x)).collect();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    c.witness,
                    num(c.max_angle_objective),
                    num(c.min_expectation),
                    c.pass,
                    c.evaluations,
                    c.converged,
                    angles.join(",")
                ));
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_round_trip_numbers() {
        for x in [0.1, 1.0, -0.09383632135605413, 1e-20, 2.8284271247461903] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.25), "0.25");
    }
}
