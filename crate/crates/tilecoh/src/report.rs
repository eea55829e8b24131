//! The analysis pipeline: rule → windows → complex → cohomology → ring,
//! frequency and Chern verdicts, collected into one serializable report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cohomology::{degree_cohomology, DegreeCohomology, GroupSummary, LimitElement, LimitSummary, ProbeLevel};
use crate::complexes::{
    build_ap_uncollared, build_dual_complex, quotient_by_involution, triangulate, verify_complex, CellComplex,
    CellInvolution, CellMap, Geometry, Model, SymmetryLevel, SymmetrySpec,
};
use crate::error::{Error, Result};
use crate::frequency::{frequency_module, frequency_module_per_dimension, FrequencyComponent, FrequencyModule};
use crate::patches::{enumerate_legal_windows, unit_shapes, WindowLanguage};
use crate::ring::{bilinear_forms_by_eigenvalue, chern_integrality_check, eigen_basis, with_torsion_zero, BilinearFormsReport, ChernVerdict};
use crate::substitution::{ColorInvolution, SubstitutionRule};

/// Which cell complex to build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexChoice {
    #[default]
    Dual,
    ApUncollared,
}

/// A divisibility probe request: powers p, p², …, p^depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRequest {
    #[serde(serialize_with = "crate::linalg::matrix::serialize_bigint")]
    pub prime: BigInt,
    pub depth: u32,
}

/// Pipeline options; echoed into the report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AnalysisConfig {
    pub complex: ComplexChoice,
    pub assume_border: bool,
    /// Highest cohomological degree to compute (default: the dimension).
    pub max_degree: Option<usize>,
    pub ring: bool,
    pub chern: bool,
    pub probes: Vec<ProbeRequest>,
    pub quotient: Option<SymmetrySpec>,
    /// Kuhn-triangulate the cubical complex before any complex-level quotient.
    pub triangulate: bool,
    /// Offset of child cells inside the inflated dual cell.
    pub anchor: usize,
}

/// Everything built before cohomology.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub rule: SubstitutionRule,
    pub language: WindowLanguage,
    pub complex: CellComplex,
    pub map: CellMap,
    pub timings: BTreeMap<String, f64>,
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, stage: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let t = Instant::now();
    let out = f()?;
    *timings.entry(stage.to_string()).or_default() += t.elapsed().as_secs_f64() * 1e3;
    Ok(out)
}

/// Builds the complex and chain map requested by `config`.
///
/// A rule-level symmetry acts on colors: it is lifted to the legal 2^d
/// windows and the window rule is replaced by its quotient before any
/// complex is built. A complex-level symmetry acts on the built complex.
pub fn prepare(rule: &SubstitutionRule, config: &AnalysisConfig) -> Result<Prepared> {
    let mut timings = BTreeMap::new();
    if !rule.primitivity().primitive {
        return Err(Error::NotPrimitive);
    }
    let d = rule.dim;
    let shapes = match config.complex {
        ComplexChoice::Dual => unit_shapes(d),
        ComplexChoice::ApUncollared => vec![vec![2; d]],
    };
    let mut rule = rule.clone();
    if let Some(spec) = config.quotient.as_ref().filter(|s| s.level == SymmetryLevel::Rule) {
        rule = timed(&mut timings, "rule_quotient", || {
            let colors = spec.colors.clone().ok_or_else(|| Error::IncompatibleInvolution("rule-level symmetry needs a color permutation".into()))?;
            let g = ColorInvolution::new(colors)?;
            let lang = enumerate_legal_windows(&rule, &[vec![2; d]])?;
            let windows = rule.derive_window_rule(&lang, 0)?;
            let induced = rule.induced_window_involution(&lang, &g)?;
            let mut q = windows.quotient_by_involution(&induced)?;
            q.name = format!("{}-quotient", rule.name);
            Ok(q)
        })?;
    }
    let language = timed(&mut timings, "windows", || enumerate_legal_windows(&rule, &shapes))?;
    let (mut complex, mut map) = timed(&mut timings, "complex", || match config.complex {
        ComplexChoice::Dual => build_dual_complex(&rule, &language, config.anchor),
        ComplexChoice::ApUncollared => {
            build_ap_uncollared(&rule, &language, config.assume_border || rule.forces_border == Some(true))
        }
    })?;
    if config.triangulate {
        (complex, map) = timed(&mut timings, "triangulate", || triangulate(&complex, &map))?;
    }
    if let Some(spec) = config.quotient.as_ref().filter(|s| s.level == SymmetryLevel::Complex) {
        (complex, map) = timed(&mut timings, "complex_quotient", || {
            let g = CellInvolution::from_symmetry(&complex, spec)?;
            quotient_by_involution(&complex, &map, &g)
        })?;
    }
    Ok(Prepared { rule, language, complex, map, timings })
}

#[derive(Clone, Debug, Serialize)]
pub struct RuleSummary {
    pub name: String,
    pub dimension: usize,
    pub expansion: usize,
    pub colors: usize,
    pub primitivity_exponent: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexSummary {
    pub model: Model,
    pub geometry: Geometry,
    pub counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub betti: Vec<usize>,
}

/// Divisibility probes of one rational eigenclass.
#[derive(Clone, Debug, Serialize)]
pub struct EigenclassProbe {
    pub eigenvalue: i64,
    #[serde(serialize_with = "crate::linalg::matrix::serialize_bigint")]
    pub prime: BigInt,
    pub levels: Vec<ProbeLevel>,
    /// Divisible by every power of the prime, by a Krylov certificate.
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// Cohomology of the complex.
    pub group: GroupSummary,
    /// The direct limit under the substitution.
    pub limit: LimitSummary,
    pub probes: Vec<EigenclassProbe>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrequencyReport {
    pub module: FrequencyModule,
    /// Per-degree components; advisory, see [`frequency_module_per_dimension`].
    pub components: BTreeMap<usize, Vec<FrequencyComponent>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Diagnostics {
    /// Wall-clock milliseconds per stage.
    pub timings_ms: BTreeMap<String, f64>,
    pub threads: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub rule: RuleSummary,
    pub config: AnalysisConfig,
    pub complex: ComplexSummary,
    pub cohomology: Vec<DegreeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<Vec<BilinearFormsReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency: Option<FrequencyReport>,
    /// Why the frequency module is undefined for this complex, if it is.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frequency_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chern: Option<ChernVerdict>,
    pub diagnostics: Diagnostics,
}

impl AnalysisReport {
    /// The report without its timing-dependent part.
    pub fn stable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("diagnostics");
        v
    }
}

/// Runs the whole pipeline.
pub fn analyze(rule: &SubstitutionRule, config: &AnalysisConfig) -> Result<AnalysisReport> {
    let Prepared { rule, complex, map, mut timings, .. } = prepare(rule, config)?;
    let diag = timed(&mut timings, "verify", || verify_complex(&complex, Some(&map)))?;
    let d = complex.dim;
    let top = config.max_degree.unwrap_or(d).min(d);
    let groups: Vec<DegreeCohomology> =
        timed(&mut timings, "cohomology", || (0..=top).map(|q| degree_cohomology(&complex, &map, q)).collect())?;

    let mut cohomology = Vec::with_capacity(groups.len());
    timed(&mut timings, "probes", || {
        for dc in &groups {
            let mut probes = Vec::new();
            if !config.probes.is_empty() {
                let basis = eigen_basis(dc);
                for req in &config.probes {
                    for (e, v) in basis.eigenvalues.iter().zip(&basis.vectors) {
                        let x = LimitElement::new(0, with_torsion_zero(&dc.group, v));
                        probes.push(EigenclassProbe {
                            eigenvalue: *e,
                            prime: req.prime.clone(),
                            levels: dc.limit.divisibility_probe(&x, &req.prime, req.depth),
                            certified: dc.limit.eigen_divisibility_certificate(&x, &req.prime, req.depth).is_some(),
                        });
                    }
                }
            }
            cohomology.push(DegreeReport {
                degree: dc.group.degree,
                group: dc.group.summary(),
                limit: dc.limit.summary(),
                probes,
            });
        }
        Ok(())
    })?;

    let ring = if config.ring {
        Some(timed(&mut timings, "ring", || {
            let mut forms = Vec::new();
            for p in 1..=top {
                for q in p..=top - p {
                    forms.push(bilinear_forms_by_eigenvalue(&complex, &groups[p], &groups[q], &groups[p + q])?);
                }
            }
            Ok(forms)
        })?)
    } else {
        None
    };

    let t = Instant::now();
    let frequency = frequency_module(&complex, &map)
        .and_then(|module| {
            let mut components = BTreeMap::new();
            for q in 1..d {
                components.insert(q, frequency_module_per_dimension(&complex, &map, q)?);
            }
            Ok(FrequencyReport { module, components })
        })
        .map_err(|e| e.to_string());
    let (frequency, frequency_error) = match frequency {
        Ok(f) => (Some(f), None),
        Err(e) => (None, Some(e)),
    };
    timings.insert("frequency".into(), t.elapsed().as_secs_f64() * 1e3);

    let chern = if config.chern {
        if top < 4 || d != 4 {
            return Err(Error::WrongDimension { expected: 4, found: d });
        }
        Some(timed(&mut timings, "chern", || chern_integrality_check(&complex, &groups[2], &groups[4]))?)
    } else {
        None
    };

    Ok(AnalysisReport {
        rule: RuleSummary {
            name: rule.name.clone(),
            dimension: rule.dim,
            expansion: rule.expansion,
            colors: rule.colors,
            primitivity_exponent: rule.primitivity().exponent,
        },
        config: config.clone(),
        complex: ComplexSummary {
            model: complex.model,
            geometry: complex.geometry,
            counts: diag.counts,
            euler_characteristic: diag.euler_characteristic,
            betti: diag.betti,
        },
        cohomology,
        ring,
        frequency,
        frequency_error,
        chern,
        diagnostics: Diagnostics { timings_ms: timings, threads: rayon::current_num_threads() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::one_color;

    #[test]
    fn torus_report() {
        let r = one_color(2, 2);
        let report = analyze(&r, &AnalysisConfig { ring: true, ..Default::default() }).unwrap();
        assert_eq!(report.complex.betti, vec![1, 2, 1]);
        let groups: Vec<&str> = report.cohomology.iter().map(|c| c.limit.group.as_str()).collect();
        assert_eq!(groups, vec!["Z", "Z^2", "Z"]);
        assert_eq!(report.frequency.as_ref().unwrap().module.rendered, "Z[1/2]");
        assert!(report.ring.unwrap()[0].surjective);
        let json = serde_json::to_value(analyze(&r, &AnalysisConfig::default()).unwrap()).unwrap();
        assert!(json["diagnostics"]["timings_ms"].is_object());
    }

    #[test]
    fn report_is_deterministic() {
        let r = crate::fixtures::builtin("chair-2").unwrap();
        let cfg = AnalysisConfig { ring: true, ..Default::default() };
        assert_eq!(analyze(&r, &cfg).unwrap().stable_json(), analyze(&r, &cfg).unwrap().stable_json());
    }

    #[test]
    fn chern_needs_dimension_four() {
        let r = one_color(2, 2);
        let err = analyze(&r, &AnalysisConfig { chern: true, ..Default::default() }).unwrap_err();
        assert!(matches!(err, Error::WrongDimension { expected: 4, found: 2 }));
    }
}
