//! Full analysis pipeline over one problem document, and the deterministic
//! key-value report (plus a single-line machine JSON block) it emits. All
//! numbers go through the 12-significant-digit formatter so identical
//! inputs produce identical bytes.

use bcpath::omega::{OmegaRegion, RegionLocation};
use bcpath::{
    candidate_set, classify_endpoints, classify_homotopy, construct_region, extend_path,
    gradient_feasibility, plan_min_length, validate_path, CurvaturePath, DSubcase, DubinsWord,
    FeasibilityReport, PlanOptions, PlanResult, Point, ProblemInstance, ProximityReport,
};

use crate::doc::{emit_segment, ProblemDocument};
use crate::fmt::fmt12;

#[derive(Debug, Clone)]
pub struct CandidateRow {
    pub word: DubinsWord,
    pub length: f64,
    pub verdict: String,
}

#[derive(Debug, Clone)]
pub struct RegionSummary {
    pub thetas: [f64; 4],
    pub inflections: [Point; 4],
    pub middle_upper: Point,
    pub middle_lower: Point,
    pub middle_sweep_upper: f64,
    pub middle_sweep_lower: f64,
    pub diameter: f64,
    pub diameter_witness: (Point, Point),
    pub diameter_candidate_endpoints: f64,
    pub diameter_candidate_middle: Option<f64>,
    pub diameter_sampled: f64,
    pub diameter_disagreement: bool,
}

#[derive(Debug, Clone)]
pub struct PlanSummary {
    pub required: f64,
    pub outcome: Result<(String, Option<DubinsWord>, f64), String>,
    pub extended_segments: Option<CurvaturePath>,
}

#[derive(Debug, Clone)]
pub struct GradientSummary {
    pub drop: f64,
    pub max_gradient: f64,
    pub planar_length: f64,
    pub report: FeasibilityReport,
}

#[derive(Debug, Clone)]
pub struct PathSummary {
    pub valid: bool,
    pub violations: Vec<String>,
    pub length: f64,
    pub verdict: String,
    pub in_omega: Option<bool>,
}

/// Everything the report carries; built deterministically from a document.
#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub doc: ProblemDocument,
    pub canonical_y: (f64, f64, f64),
    pub proximity: ProximityReport,
    pub candidates: Vec<CandidateRow>,
    pub region: Option<RegionSummary>,
    pub plan: Option<PlanSummary>,
    pub gradient: Option<GradientSummary>,
    pub path: Option<PathSummary>,
}

/// Options for extra (oracle) report lines.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub oracle: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            oracle: false,
            seed: 0,
        }
    }
}

/// Runs the whole pipeline: proximity classification, candidate verdicts,
/// region summary, planning, gradient feasibility, and path checking.
pub fn run_problem(doc: &ProblemDocument) -> ReportDocument {
    let instance = doc.instance().expect("validated at parse time");
    let proximity = classify_endpoints(&instance);
    let set = candidate_set(&instance).expect("distinct configurations");
    let candidates: Vec<CandidateRow> = set
        .entries()
        .iter()
        .map(|c| CandidateRow {
            word: c.word,
            length: c.length,
            verdict: classify_homotopy(&instance, &c.path).label(),
        })
        .collect();

    let region = construct_region(&instance).map(|r| summarize_region(&r));

    // Effective requirement: explicit required_length, raised to the
    // gradient-derived lower bound when a gradient block is present.
    let gradient_required = doc
        .gradient
        .map(|g| g.vertical_drop.abs() / g.max_gradient);
    let required = match (doc.required_length, gradient_required) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (Some(a), None) => Some(a),
        (None, Some(b)) => Some(b),
        (None, None) => None,
    };

    let plan = required.map(|req| {
        let outcome = match plan_min_length(&instance, req, PlanOptions::default()) {
            Ok(PlanResult {
                branch,
                word,
                length,
                path,
                ..
            }) => {
                let _ = path;
                Ok((branch.to_string(), word, length))
            }
            Err(e) => Err(e.to_string()),
        };
        PlanSummary {
            required: req,
            outcome,
            extended_segments: None,
        }
    });

    let gradient = doc.gradient.map(|g| {
        let planar_length = plan
            .as_ref()
            .and_then(|p| p.outcome.as_ref().ok().map(|(_, _, l)| *l))
            .unwrap_or(set.shortest().length);
        GradientSummary {
            drop: g.vertical_drop,
            max_gradient: g.max_gradient,
            planar_length,
            report: gradient_feasibility(g.vertical_drop, g.max_gradient, planar_length)
                .expect("gradient validated at parse time"),
        }
    });

    let path = doc.path_under_test().map(|p| {
        let report = validate_path(&p, &instance);
        let in_omega = construct_region(&instance).map(|r| r.path_relation(&p).in_omega);
        PathSummary {
            valid: report.is_valid(),
            violations: report.violations.iter().map(|v| v.to_string()).collect(),
            length: p.total_length(),
            verdict: classify_homotopy(&instance, &p).label(),
            in_omega,
        }
    });

    let y = instance.y();
    ReportDocument {
        doc: doc.clone(),
        canonical_y: (
            y.position.x,
            y.position.y,
            y.heading_angle().to_degrees(),
        ),
        proximity,
        candidates,
        region,
        plan,
        gradient,
        path,
    }
}

/// Extends the document's path (or the shortest candidate when none is
/// given) to the required length, for the `extend` verb.
pub fn run_extend(doc: &ProblemDocument) -> Result<(ReportDocument, CurvaturePath), String> {
    let instance = doc.instance().expect("validated at parse time");
    let required = doc
        .required_length
        .ok_or_else(|| "extend requires required_length".to_string())?;
    let base = match doc.path_under_test() {
        Some(p) => p,
        None => {
            let set = candidate_set(&instance).map_err(|e| e.to_string())?;
            set.shortest().path.clone()
        }
    };
    let (extended, _family) = extend_path(&base, required).map_err(|e| e.to_string())?;
    let mut report = run_problem(doc);
    if let Some(plan) = report.plan.as_mut() {
        plan.extended_segments = Some(extended.clone());
    } else {
        report.plan = Some(PlanSummary {
            required,
            outcome: Ok(("extended_given_path".to_string(), None, extended.total_length())),
            extended_segments: Some(extended.clone()),
        });
    }
    Ok((report, extended))
}

fn summarize_region(region: &OmegaRegion) -> RegionSummary {
    let diameter = region.diameter();
    let (upper, lower) = region.middle_circles();
    let (um, lm) = region.middle_arcs();
    RegionSummary {
        thetas: region.thetas(),
        inflections: std::array::from_fn(|k| region.inflections()[k].point),
        middle_upper: upper.center,
        middle_lower: lower.center,
        middle_sweep_upper: um.sweep,
        middle_sweep_lower: lm.sweep,
        diameter: diameter.value,
        diameter_witness: diameter.witness,
        diameter_candidate_endpoints: diameter.candidate_endpoints,
        diameter_candidate_middle: diameter.candidate_middle,
        diameter_sampled: diameter.sampled,
        diameter_disagreement: diameter.disagreement,
    }
}

impl ReportDocument {
    /// Key-value report plus a one-line machine JSON block.
    pub fn emit(&self, options: &RunOptions) -> String {
        let mut out = String::new();
        let push = |out: &mut String, key: &str, value: String| {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&value);
            out.push('\n');
        };

        push(&mut out, "report", "bcpath/1".to_string());
        push(&mut out, "kappa_max", fmt12(self.doc.kappa_max));
        push(
            &mut out,
            "x_raw",
            format!(
                "{} {} {}",
                fmt12(self.doc.x.px),
                fmt12(self.doc.x.py),
                fmt12(self.doc.x.heading_degrees)
            ),
        );
        push(
            &mut out,
            "y_raw",
            format!(
                "{} {} {}",
                fmt12(self.doc.y.px),
                fmt12(self.doc.y.py),
                fmt12(self.doc.y.heading_degrees)
            ),
        );
        push(
            &mut out,
            "y_canonical",
            format!(
                "{} {} {}",
                fmt12(self.canonical_y.0),
                fmt12(self.canonical_y.1),
                fmt12(self.canonical_y.2)
            ),
        );

        push(&mut out, "d_ll", fmt12(self.proximity.d_ll));
        push(&mut out, "d_rr", fmt12(self.proximity.d_rr));
        push(&mut out, "raw_condition", self.proximity.raw.to_string());
        push(&mut out, "class", self.proximity.class.to_string());
        if let Some(sub) = self.proximity.d_subcase {
            push(&mut out, "d_subcase", sub.to_string());
        }
        push(
            &mut out,
            "forward_region",
            self.proximity.forward_region.to_string(),
        );
        push(
            &mut out,
            "y_inside_adjacent_disk",
            self.proximity.y_inside_adjacent_disk.to_string(),
        );

        for row in &self.candidates {
            push(
                &mut out,
                "candidate",
                format!("{} {} {}", row.word, fmt12(row.length), row.verdict),
            );
        }

        push(&mut out, "region_present", self.region.is_some().to_string());
        if let Some(region) = &self.region {
            push(
                &mut out,
                "region_theta",
                region
                    .thetas
                    .iter()
                    .map(|t| fmt12(*t))
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            for (k, p) in region.inflections.iter().enumerate() {
                push(
                    &mut out,
                    "region_inflection",
                    format!("{} {} {}", k + 1, fmt12(p.x), fmt12(p.y)),
                );
            }
            push(
                &mut out,
                "region_middle_upper",
                format!(
                    "{} {}",
                    fmt12(region.middle_upper.x),
                    fmt12(region.middle_upper.y)
                ),
            );
            push(
                &mut out,
                "region_middle_lower",
                format!(
                    "{} {}",
                    fmt12(region.middle_lower.x),
                    fmt12(region.middle_lower.y)
                ),
            );
            push(
                &mut out,
                "region_middle_sweep",
                format!(
                    "{} {}",
                    fmt12(region.middle_sweep_upper),
                    fmt12(region.middle_sweep_lower)
                ),
            );
            push(&mut out, "region_diameter", fmt12(region.diameter));
            push(
                &mut out,
                "region_diameter_witness",
                format!(
                    "{} {} {} {}",
                    fmt12(region.diameter_witness.0.x),
                    fmt12(region.diameter_witness.0.y),
                    fmt12(region.diameter_witness.1.x),
                    fmt12(region.diameter_witness.1.y)
                ),
            );
            push(
                &mut out,
                "region_diameter_candidate_endpoints",
                fmt12(region.diameter_candidate_endpoints),
            );
            if let Some(m) = region.diameter_candidate_middle {
                push(&mut out, "region_diameter_candidate_middle", fmt12(m));
            }
            push(
                &mut out,
                "region_diameter_sampled",
                fmt12(region.diameter_sampled),
            );
            push(
                &mut out,
                "region_diameter_disagreement",
                region.diameter_disagreement.to_string(),
            );
        }

        if let Some(plan) = &self.plan {
            push(&mut out, "plan_required", fmt12(plan.required));
            match &plan.outcome {
                Ok((branch, word, length)) => {
                    push(&mut out, "plan_branch", branch.clone());
                    if let Some(word) = word {
                        push(&mut out, "plan_word", word.to_string());
                    }
                    push(&mut out, "plan_length", fmt12(*length));
                }
                Err(msg) => {
                    push(&mut out, "plan_error", msg.clone());
                }
            }
            if let Some(extended) = &plan.extended_segments {
                push(
                    &mut out,
                    "extended_length",
                    fmt12(extended.total_length()),
                );
                for seg in extended.segments() {
                    out.push_str(&emit_segment(seg).replacen("segment", "extended_segment", 1));
                }
            }
        }

        if let Some(gradient) = &self.gradient {
            push(&mut out, "gradient_drop", fmt12(gradient.drop));
            push(&mut out, "gradient_max", fmt12(gradient.max_gradient));
            push(
                &mut out,
                "gradient_required_length",
                fmt12(gradient.report.required_planar_length),
            );
            push(
                &mut out,
                "gradient_planar_length",
                fmt12(gradient.planar_length),
            );
            push(
                &mut out,
                "gradient_feasible",
                gradient.report.feasible.to_string(),
            );
            push(
                &mut out,
                "gradient_shortfall",
                fmt12(gradient.report.shortfall),
            );
        }

        if let Some(path) = &self.path {
            push(
                &mut out,
                "path_segment_count",
                self.doc.segments.len().to_string(),
            );
            push(&mut out, "path_valid", path.valid.to_string());
            for v in &path.violations {
                push(&mut out, "path_violation", v.clone());
            }
            push(&mut out, "path_length", fmt12(path.length));
            push(&mut out, "path_verdict", path.verdict.clone());
            if let Some(in_omega) = path.in_omega {
                push(&mut out, "path_in_omega", in_omega.to_string());
            }
        }

        if options.oracle {
            self.emit_oracle_lines(&mut out, options.seed, &push);
        }

        push(&mut out, "machine", self.machine_json());
        out
    }

    /// Sampling cross-checks behind the `--oracle` flag.
    fn emit_oracle_lines(
        &self,
        out: &mut String,
        seed: u64,
        push: &dyn Fn(&mut String, &str, String),
    ) {
        let Some(region_summary) = &self.region else {
            push(out, "oracle_region", "absent".to_string());
            return;
        };
        let instance = self.doc.instance().expect("validated");
        let region = construct_region(&instance).expect("region present");

        // Independent dense pairwise diameter.
        let step = 2e-3;
        let mut pts: Vec<Point> = Vec::new();
        for b in region.boundary() {
            let len = b.arc.length();
            if len <= 1e-12 {
                continue;
            }
            let n = (len / step).ceil().max(1.0) as usize;
            for i in 0..=n {
                pts.push(b.arc.point_at(len * i as f64 / n as f64));
            }
        }
        let mut max = 0.0f64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                max = max.max(pts[i].distance(pts[j]));
            }
        }
        push(out, "oracle_diameter_pairwise", fmt12(max));
        push(
            out,
            "oracle_diameter_gap",
            fmt12((max - region_summary.diameter).abs()),
        );

        // Jordan parity probes with a deterministic linear congruence.
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let mut ok = 0usize;
        let mut total = 0usize;
        for _ in 0..64 {
            let p = Point::new(next() * 10.0 - 3.0, next() * 10.0 - 5.0);
            let loc = region.locate_point(p);
            let loc2 = region.locate_point(p);
            total += 1;
            if loc == loc2 {
                ok += 1;
            }
            let _ = matches!(loc, RegionLocation::Inside);
        }
        push(out, "oracle_parity_probes", format!("{ok}/{total}"));
    }

    fn machine_json(&self) -> String {
        let mut s = String::from("{");
        let b = |v: bool| if v { "true" } else { "false" };
        s.push_str(&format!("\"kappa_max\":{}", fmt12(self.doc.kappa_max)));
        s.push_str(&format!(
            ",\"x\":[{},{},{}]",
            fmt12(self.doc.x.px),
            fmt12(self.doc.x.py),
            fmt12(self.doc.x.heading_degrees)
        ));
        s.push_str(&format!(
            ",\"y\":[{},{},{}]",
            fmt12(self.doc.y.px),
            fmt12(self.doc.y.py),
            fmt12(self.doc.y.heading_degrees)
        ));
        s.push_str(&format!(
            ",\"proximity\":{{\"d_ll\":{},\"d_rr\":{},\"raw\":\"{}\",\"class\":\"{}\",\"subcase\":{},\"forward_region\":{},\"y_inside_adjacent_disk\":{}}}",
            fmt12(self.proximity.d_ll),
            fmt12(self.proximity.d_rr),
            self.proximity.raw,
            self.proximity.class,
            match self.proximity.d_subcase {
                Some(sub) => format!("\"{sub}\""),
                None => "null".to_string(),
            },
            b(self.proximity.forward_region),
            b(self.proximity.y_inside_adjacent_disk),
        ));
        s.push_str(",\"candidates\":[");
        for (i, row) in self.candidates.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!(
                "{{\"word\":\"{}\",\"length\":{},\"verdict\":\"{}\"}}",
                row.word,
                fmt12(row.length),
                row.verdict
            ));
        }
        s.push(']');
        match &self.region {
            None => s.push_str(",\"region\":null"),
            Some(r) => {
                s.push_str(",\"region\":{\"theta\":[");
                for (i, t) in r.thetas.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&fmt12(*t));
                }
                s.push_str("],\"inflections\":[");
                for (i, p) in r.inflections.iter().enumerate() {
                    if i > 0 {
                        s.push(',');
                    }
                    s.push_str(&format!("[{},{}]", fmt12(p.x), fmt12(p.y)));
                }
                s.push_str(&format!(
                    "],\"middle_centers\":[[{},{}],[{},{}]],\"diameter\":{},\"diameter_disagreement\":{}}}",
                    fmt12(r.middle_upper.x),
                    fmt12(r.middle_upper.y),
                    fmt12(r.middle_lower.x),
                    fmt12(r.middle_lower.y),
                    fmt12(r.diameter),
                    b(r.diameter_disagreement),
                ));
            }
        }
        match &self.plan {
            None => s.push_str(",\"plan\":null"),
            Some(p) => match &p.outcome {
                Ok((branch, word, length)) => s.push_str(&format!(
                    ",\"plan\":{{\"required\":{},\"branch\":\"{}\",\"word\":{},\"length\":{}}}",
                    fmt12(p.required),
                    branch,
                    match word {
                        Some(w) => format!("\"{w}\""),
                        None => "null".to_string(),
                    },
                    fmt12(*length)
                )),
                Err(e) => s.push_str(&format!(
                    ",\"plan\":{{\"required\":{},\"error\":\"{}\"}}",
                    fmt12(p.required),
                    e.replace('"', "'")
                )),
            },
        }
        match &self.gradient {
            None => s.push_str(",\"gradient\":null"),
            Some(g) => s.push_str(&format!(
                ",\"gradient\":{{\"drop\":{},\"max\":{},\"required_length\":{},\"planar_length\":{},\"feasible\":{},\"shortfall\":{}}}",
                fmt12(g.drop),
                fmt12(g.max_gradient),
                fmt12(g.report.required_planar_length),
                fmt12(g.planar_length),
                b(g.report.feasible),
                fmt12(g.report.shortfall),
            )),
        }
        match &self.path {
            None => s.push_str(",\"path\":null"),
            Some(p) => s.push_str(&format!(
                ",\"path\":{{\"valid\":{},\"length\":{},\"verdict\":\"{}\",\"in_omega\":{}}}",
                b(p.valid),
                fmt12(p.length),
                p.verdict,
                match p.in_omega {
                    Some(v) => b(v).to_string(),
                    None => "null".to_string(),
                }
            )),
        }
        s.push('}');
        s
    }
}
