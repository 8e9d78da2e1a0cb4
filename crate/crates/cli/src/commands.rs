//! One function per verb. Each returns the report body and its exit code.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Value};

use maxsym_core::algebra::json::{format_vec, parse_vec};
use maxsym_core::forms::{
    basis_pairing_blocks, canonical_form, gram_matrix, is_degree_form, is_symmetric_matrix, is_symmetrizing,
};
use maxsym_core::linalg::field::{det, Rationals};
use maxsym_core::maxsym::{intermediate_oracle, run_main_theorem_check};
use maxsym_core::quasi_unit::{pidqu_certificate, quasi_unit_bruteforce};
use maxsym_core::quiver::{canonical_a_ell, canonical_a_tilde_ell};
use maxsym_core::schur::schur_algebra;
use maxsym_core::{
    AlgebraData, BaseRing, CheckOptions, Element, Error, Generators, GradedSandwich, IdempotentDecomposition,
    LinearForm, PidquVerdict, QuasiUnitVerdict, Result,
};

use crate::report::{load, Input, Outcome};

/// Inputs read so far, in the order they were read.
#[derive(Default)]
pub struct Inputs(pub Vec<Input>);

impl Inputs {
    fn algebra(&mut self, path: &Path) -> Result<AlgebraData> {
        let l = load("algebra", path)?;
        self.0.push(l.input);
        AlgebraData::from_json(&l.text)
    }

    fn sandwich(&mut self, path: &Path) -> Result<GradedSandwich> {
        let l = load("sandwich", path)?;
        self.0.push(l.input);
        GradedSandwich::from_json(&l.text)
    }

    fn text(&mut self, role: &'static str, path: &Path) -> Result<String> {
        let l = load(role, path)?;
        self.0.push(l.input);
        Ok(l.text)
    }
}

fn base(s: &str) -> Result<BaseRing> {
    s.parse()
}

fn strings(e: &Element) -> Vec<String> {
    format_vec(&e.coeffs)
}

/// Algebra JSON is the artifact itself, not a report, so builders can be chained.
fn artifact(alg: &AlgebraData, summary: String) -> Result<Outcome> {
    Ok(Outcome {
        body: serde_json::to_value(alg.to_doc()).map_err(|e| Error::Internal(e.to_string()))?,
        exit: 0,
        summary,
    })
}

pub fn build_aell(ell: usize, base_ring: &str) -> Result<Outcome> {
    let alg = canonical_a_ell(ell, base(base_ring)?)?;
    let summary = format!("A_{ell}: rank {}, graded ranks {:?}", alg.rank(), alg.graded_ranks());
    artifact(&alg, summary)
}

pub fn build_atilde(ell: usize, base_ring: &str) -> Result<Outcome> {
    let alg = canonical_a_tilde_ell(ell, base(base_ring)?)?;
    let summary = format!("Ã_{ell}: rank {}, graded ranks {:?}", alg.rank(), alg.graded_ranks());
    artifact(&alg, summary)
}

/// The invariant algebra JSON plus the embedding into the tensor power and the weight idempotents.
pub fn build_schur(inputs: &mut Inputs, algebra: &Path, n: usize, d: usize, cap: u128) -> Result<Outcome> {
    let a = inputs.algebra(algebra)?;
    let s = schur_algebra(&a, n, d, cap)?;
    let mut body = serde_json::to_value(s.invariant.to_doc()).map_err(|e| Error::Internal(e.to_string()))?;
    let weights: Vec<Value> = s
        .weight_idempotents()?
        .iter()
        .map(|(c, e)| json!({ "weight": c.to_string(), "element": strings(e) }))
        .collect();
    let extra = json!({
        "n": n,
        "d": d,
        "tensor_rank": s.tensor.rank(),
        "embedding": s.invariant_lattice.basis().iter().map(|r| format_vec(r)).collect::<Vec<_>>(),
        "weight_idempotents": weights,
        "xi_omega": strings(&s.xi_omega()?),
    });
    let obj = body.as_object_mut().expect("algebra doc is an object");
    for (k, v) in extra.as_object().expect("object literal") {
        obj.insert(k.clone(), v.clone());
    }
    let summary = format!(
        "S(n={n}, d={d}): rank {}, graded ranks {:?}",
        s.invariant.rank(),
        s.invariant.graded_ranks()
    );
    Ok(Outcome { body, exit: 0, summary })
}

fn parse_form(s: &str) -> Result<LinearForm> {
    s.split(',')
        .map(|c| c.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("bad form coefficient '{c}'"))))
        .collect::<Result<Vec<_>>>()
        .map(LinearForm::new)
}

pub fn check_form(inputs: &mut Inputs, algebra: &Path, form: Option<&str>, degree: Option<u32>) -> Result<Outcome> {
    let alg = inputs.algebra(algebra)?;
    let t = match form {
        Some(s) => parse_form(s)?,
        None => canonical_form(&alg)?,
    };
    let n = degree.unwrap_or(alg.top_degree());
    let g = gram_matrix(&alg, &t)?;
    let symmetric = is_symmetric_matrix(&g);
    let symmetrizing = is_symmetrizing(&alg, &t)?;
    let degree_form = is_degree_form(&alg, &t, n)?;
    let blocks = basis_pairing_blocks(&alg, &t)?;
    let pass = symmetrizing && degree_form;
    let body = json!({
        "form": t.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "form_source": if form.is_some() { "given" } else { "canonical" },
        "degree": n,
        "gram_symmetric": symmetric,
        "gram_det": det(&Rationals, &g).to_string(),
        "symmetrizing": symmetrizing,
        "degree_form": degree_form,
        "blocks": blocks,
        "pass": pass,
    });
    Ok(Outcome {
        body,
        exit: if pass { 0 } else { 1 },
        summary: format!("form: symmetrizing {symmetrizing}, degree-{n} form {degree_form}"),
    })
}

/// Reduces mod `prime` if asked, then optionally passes to the degree-zero part.
/// Returns the working algebra and the basis indices it keeps.
fn working_algebra(alg: AlgebraData, prime: Option<u64>, degree_zero: bool) -> Result<(AlgebraData, Vec<usize>)> {
    let alg = match (alg.base(), prime) {
        (_, None) => alg,
        (BaseRing::Integers, Some(p)) => alg.reduce_mod_p(p)?,
        (BaseRing::PrimeField(q), Some(p)) if q == p => alg,
        (b, Some(p)) => return Err(Error::UnsupportedBase(format!("cannot reduce an algebra over {b} mod {p}"))),
    };
    if degree_zero {
        alg.degree_zero_subalgebra()
    } else {
        let idx = (0..alg.rank()).collect();
        Ok((alg, idx))
    }
}

/// A basis label, or comma-separated integer coordinates in the full algebra.
fn parse_element(full: &AlgebraData, s: &str) -> Result<Element> {
    if let Some(i) = full.index_of(s.trim()) {
        return Ok(Element::basis(full.rank(), i));
    }
    let parts: Vec<String> = s.split(',').map(|x| x.trim().to_string()).collect();
    let v = parse_vec(&parts)?;
    if v.len() != full.rank() {
        return Err(Error::Dimension(format!("element has {} coordinates, algebra has rank {}", v.len(), full.rank())));
    }
    Ok(Element::new(v))
}

fn restrict(e: &Element, idx: &[usize]) -> Result<Element> {
    let keep: std::collections::HashSet<usize> = idx.iter().copied().collect();
    if e.support().any(|i| !keep.contains(&i)) {
        return Err(Error::NotHomogeneous(e.support().find(|i| !keep.contains(i)).expect("just found")));
    }
    Ok(Element::new(idx.iter().map(|&i| e.coeffs[i].clone()).collect()))
}

fn quasi_unit_json(v: &QuasiUnitVerdict) -> Value {
    match v {
        QuasiUnitVerdict::Yes { central_dim, checked } => {
            json!({ "verdict": "yes", "central_dim": central_dim, "checked": checked.to_string() })
        }
        QuasiUnitVerdict::No { z, a } => json!({ "verdict": "no", "z": strings(z), "a": strings(a) }),
        QuasiUnitVerdict::Inconclusive { central_dim, cap } => {
            json!({ "verdict": "inconclusive", "central_dim": central_dim, "cap": cap.to_string() })
        }
    }
}

pub fn check_quasiunit(
    inputs: &mut Inputs,
    algebra: &Path,
    element: &str,
    prime: Option<u64>,
    cap: u128,
    degree_zero: bool,
) -> Result<Outcome> {
    let full = inputs.algebra(algebra)?;
    let xi = parse_element(&full, element)?;
    let (alg, idx) = working_algebra(full, prime, degree_zero)?;
    let xi = restrict(&xi, &idx)?;
    let v = quasi_unit_bruteforce(&alg, &xi.coeffs, cap)?;
    let exit = match v {
        QuasiUnitVerdict::Yes { .. } => 0,
        QuasiUnitVerdict::No { .. } => 1,
        QuasiUnitVerdict::Inconclusive { .. } => 2,
    };
    let body = json!({
        "base": alg.base().to_string(),
        "degree_zero": degree_zero,
        "xi": strings(&xi),
        "quasi_unit": quasi_unit_json(&v),
    });
    Ok(Outcome {
        body,
        exit,
        summary: format!("quasi-unit over {}: {}", alg.base(), v.label()),
    })
}

/// Either a bare list of elements or the `build-schur` output with its weight idempotents.
#[derive(Deserialize)]
#[serde(untagged)]
enum DecompositionFile {
    Parts(Vec<Vec<String>>),
    Schur { weight_idempotents: Vec<WeightEntry> },
}

#[derive(Deserialize)]
struct WeightEntry {
    element: Vec<String>,
}

fn parse_parts(text: &str, role: &str) -> Result<Vec<Vec<BigInt>>> {
    let file: DecompositionFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("{role}: {e}")))?;
    let rows = match file {
        DecompositionFile::Parts(p) => p,
        DecompositionFile::Schur { weight_idempotents } => {
            weight_idempotents.into_iter().map(|w| w.element).collect()
        }
    };
    rows.iter().map(|r| parse_vec(r)).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn certify_quasiunit(
    inputs: &mut Inputs,
    algebra: &Path,
    decomposition: &Path,
    first: Option<usize>,
    generators: Option<&PathBuf>,
    prime: Option<u64>,
    degree_zero: bool,
    seed: u64,
) -> Result<Outcome> {
    let full = inputs.algebra(algebra)?;
    let parts = parse_parts(&inputs.text("decomposition", decomposition)?, "decomposition")?;
    let gens = match generators {
        Some(p) => Some(parse_parts(&inputs.text("generators", p)?, "generators")?),
        None => None,
    };
    let full_rank = full.rank();
    let (alg, idx) = working_algebra(full, prime, degree_zero)?;
    let lift = |v: Vec<BigInt>| -> Result<Element> {
        if v.len() != full_rank {
            return Err(Error::Dimension(format!("element has {} coordinates, algebra has rank {full_rank}", v.len())));
        }
        restrict(&Element::new(v), &idx)
    };
    let parts = parts.into_iter().map(lift).collect::<Result<Vec<_>>>()?;
    let mut decomp = IdempotentDecomposition::new(&alg, parts)?;
    if let Some(i) = first {
        if i >= decomp.len() {
            return Err(Error::InvalidDecomposition(format!("--first {i} but only {} parts", decomp.len())));
        }
        decomp = decomp.with_first(i);
    }
    let how = match gens {
        Some(g) => Generators::Given(g.into_iter().map(lift).collect::<Result<Vec<_>>>()?),
        None => Generators::Search { seed },
    };
    let v = pidqu_certificate(&alg, &decomp, &how)?;
    let (exit, verdict) = match &v {
        PidquVerdict::Certified(ws) => (
            0,
            json!({
                "verdict": "certified",
                "witnesses": ws.iter().map(|w| json!({
                    "index": w.index,
                    "corner_rank": w.corner_rank,
                    "end_rank": w.end_rank,
                    "comparison_det": w.comparison_det.to_string(),
                    "generator": strings(&w.generator),
                    "generator_source": w.generator_source,
                })).collect::<Vec<_>>(),
            }),
        ),
        PidquVerdict::NotApplicable { index, reason } => {
            (1, json!({ "verdict": "not_applicable", "index": index, "reason": reason }))
        }
    };
    let body = json!({
        "base": alg.base().to_string(),
        "degree_zero": degree_zero,
        "e0": strings(&decomp.parts()[0]),
        "parts": decomp.len(),
        "certificate": verdict,
    });
    Ok(Outcome {
        body,
        exit,
        summary: format!("certificate over {}: {}", alg.base(), v.label()),
    })
}

pub fn check_maxsym(inputs: &mut Inputs, sandwich: &Path, opts: CheckOptions) -> Result<(Outcome, Vec<u64>)> {
    let sw = inputs.sandwich(sandwich)?;
    let r = run_main_theorem_check(&sw, opts)?;
    let summary = match &r.failed_hypothesis {
        Some(h) => format!("maxsym: {} ({h})", r.status),
        None => format!("maxsym: {}", r.status),
    };
    let primes = r.primes.clone();
    let exit = r.exit_code();
    let body = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
    Ok((Outcome { body, exit, summary }, primes))
}

pub fn oracle(inputs: &mut Inputs, sandwich: &Path, prime: u64, subgroup_cap: u64, opts: CheckOptions) -> Result<Outcome> {
    let sw = inputs.sandwich(sandwich)?;
    let r = intermediate_oracle(&sw, prime, subgroup_cap, opts)?;
    let summary = format!(
        "oracle at p = {prime}: {} lattices, {} symmetric proper intermediates, consistent {}",
        r.subgroup_count,
        r.symmetric_proper.len(),
        r.consistent
    );
    let exit = r.exit_code();
    let body = serde_json::to_value(&r).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Outcome { body, exit, summary })
}

/// Parses, validates and round-trips whichever documents were given.
pub fn validate(inputs: &mut Inputs, algebra: Option<&PathBuf>, sandwich: Option<&PathBuf>) -> Result<Outcome> {
    if algebra.is_none() && sandwich.is_none() {
        return Err(Error::Parse("validate needs --algebra or --sandwich".into()));
    }
    let mut body = serde_json::Map::new();
    if let Some(p) = algebra {
        let alg = inputs.algebra(p)?;
        let back = AlgebraData::from_json(&alg.to_json())?;
        let identical = back.to_doc() == alg.to_doc();
        if !identical {
            return Err(Error::Internal("algebra JSON does not round-trip".into()));
        }
        body.insert(
            "algebra".into(),
            json!({
                "base": alg.base().to_string(),
                "rank": alg.rank(),
                "graded_ranks": alg.graded_ranks(),
                "commutative": alg.is_commutative(),
                "round_trip": identical,
            }),
        );
    }
    if let Some(p) = sandwich {
        let sw = inputs.sandwich(p)?;
        let back = GradedSandwich::from_json(&sw.to_json())?;
        let identical = back.to_json() == sw.to_json();
        if !identical {
            return Err(Error::Internal("sandwich JSON does not round-trip".into()));
        }
        body.insert(
            "sandwich".into(),
            json!({
                "rank": sw.s().rank(),
                "top_degree": sw.top_degree(),
                "t_graded_ranks": sw.t_components().iter().map(|c| c.rank()).collect::<Vec<_>>(),
                "round_trip": identical,
            }),
        );
    }
    Ok(Outcome {
        body: Value::Object(body),
        exit: 0,
        summary: "valid".into(),
    })
}
