use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::json::{format_vec, parse_vec};
use crate::algebra::{AlgebraData, AlgebraDoc, Element, IdempotentDecomposition};
use crate::error::{Error, Result};
use crate::forms::LinearForm;
use crate::linalg::{BaseRing, Lattice};

/// A full-rank graded subalgebra `T` of a graded algebra `S` over Z, with a
/// candidate form on `T` and the element `ξ ∈ S⁰` the hypotheses are tested on.
///
/// Structural problems (components outside `S^i`, `T` not closed, unit missing)
/// are rejected at construction. Full rank and `T⁰ = S⁰` are hypotheses, so
/// they are reported by the checker instead.
#[derive(Clone, Debug)]
pub struct GradedSandwich {
    s: AlgebraData,
    t_components: Vec<Lattice>,
    t_form: LinearForm,
    xi: Element,
    u_sublattice: Option<Lattice>,
    s0_decomposition: Option<Vec<Element>>,
}

impl GradedSandwich {
    pub fn new(
        s: AlgebraData,
        t_components: Vec<Lattice>,
        t_form: LinearForm,
        xi: Element,
        u_sublattice: Option<Lattice>,
    ) -> Result<Self> {
        if s.base() != BaseRing::Integers {
            return Err(Error::UnsupportedBase(format!("sandwiches live over Z, got {}", s.base())));
        }
        let n = s.rank();
        let top = s.top_degree();
        if t_components.len() != top as usize + 1 {
            return Err(Error::InvalidSandwich(format!(
                "{} components for degrees 0..={top}",
                t_components.len()
            )));
        }
        for (i, c) in t_components.iter().enumerate() {
            if c.ambient_rank() != n {
                return Err(Error::Dimension(format!("T^{i} has ambient rank {}", c.ambient_rank())));
            }
            if !c.is_sublattice_of(&s.graded_component(i as u32)?) {
                return Err(Error::InvalidSandwich(format!("T^{i} is not inside S^{i}")));
            }
        }
        if t_form.len() != n {
            return Err(Error::Dimension(format!("form of length {} on rank {n}", t_form.len())));
        }
        if xi.len() != n || xi.support().any(|i| s.degree(i) != 0) {
            return Err(Error::InvalidSandwich("ξ is not an element of S^0".into()));
        }
        let sw = GradedSandwich {
            s,
            t_components,
            t_form,
            xi,
            u_sublattice: None,
            s0_decomposition: None,
        };
        let t = sw.t_lattice();
        if !t.contains(&sw.s.unit()) {
            return Err(Error::InvalidSandwich("T does not contain the unit".into()));
        }
        for x in t.basis() {
            for y in t.basis() {
                if !t.contains(&sw.s.mul_vec(x, y)) {
                    return Err(Error::InvalidSandwich("T is not closed under multiplication".into()));
                }
            }
        }
        let mut sw = sw;
        if let Some(u) = u_sublattice {
            sw.set_u_sublattice(u)?;
        }
        Ok(sw)
    }

    /// Registers a sublattice of `T^N` for condition (a).
    pub fn set_u_sublattice(&mut self, u: Lattice) -> Result<()> {
        if !u.is_sublattice_of(self.t_top()) {
            return Err(Error::InvalidSandwich("U is not inside T^N".into()));
        }
        self.u_sublattice = Some(u);
        Ok(())
    }

    /// Registers an idempotent decomposition of `S⁰` (ambient coordinates, `ξ`
    /// expected first) for the certificate route of condition (b).
    pub fn set_s0_decomposition(&mut self, parts: Vec<Element>) -> Result<()> {
        let (s0, idx) = self.s0_algebra()?;
        let local: Vec<Element> = parts
            .iter()
            .map(|e| {
                if e.len() != self.s.rank() || e.support().any(|i| self.s.degree(i) != 0) {
                    return Err(Error::InvalidSandwich("decomposition part outside S^0".into()));
                }
                Ok(Element::new(idx.iter().map(|&i| e[i].clone()).collect()))
            })
            .collect::<Result<_>>()?;
        IdempotentDecomposition::new(&s0, local)?;
        self.s0_decomposition = Some(parts);
        Ok(())
    }

    pub fn s(&self) -> &AlgebraData {
        &self.s
    }

    pub fn top_degree(&self) -> u32 {
        self.s.top_degree()
    }

    pub fn t_components(&self) -> &[Lattice] {
        &self.t_components
    }

    pub fn t_top(&self) -> &Lattice {
        self.t_components.last().expect("at least degree 0")
    }

    pub fn t_form(&self) -> &LinearForm {
        &self.t_form
    }

    pub fn xi(&self) -> &Element {
        &self.xi
    }

    pub fn u_sublattice(&self) -> Option<&Lattice> {
        self.u_sublattice.as_ref()
    }

    pub fn s0_decomposition(&self) -> Option<&[Element]> {
        self.s0_decomposition.as_deref()
    }

    pub fn s_component(&self, i: u32) -> Lattice {
        self.s.graded_component(i).expect("degree in range")
    }

    /// `T` as one lattice in `S`-coordinates.
    pub fn t_lattice(&self) -> Lattice {
        Lattice::new(
            self.s.rank(),
            self.t_components.iter().flat_map(|c| c.basis().iter().cloned()),
        )
        .expect("component rows have the ambient length")
    }

    /// `T`'s basis: the Hermite rows of each component, degree by degree.
    pub fn t_basis(&self) -> Vec<Vec<BigInt>> {
        self.t_components.iter().flat_map(|c| c.basis().iter().cloned()).collect()
    }

    /// `S⁰` with its own structure constants, and its basis indices in `S`.
    pub fn s0_algebra(&self) -> Result<(AlgebraData, Vec<usize>)> {
        self.s.degree_zero_subalgebra()
    }

    pub fn to_doc(&self) -> SandwichDoc {
        let rows = |l: &Lattice| l.basis().iter().map(|r| format_vec(r)).collect();
        SandwichDoc {
            algebra: self.s.to_doc(),
            t_components: self.t_components.iter().map(rows).collect(),
            t_form: self.t_form.coeffs.iter().map(ToString::to_string).collect(),
            xi: format_vec(&self.xi),
            u_sublattice: self.u_sublattice.as_ref().map(rows),
            s0_decomposition: self
                .s0_decomposition
                .as_ref()
                .map(|parts| parts.iter().map(|e| format_vec(e)).collect()),
            note: None,
        }
    }

    pub fn from_doc(doc: &SandwichDoc) -> Result<Self> {
        let s = AlgebraData::from_doc(&doc.algebra)?;
        let n = s.rank();
        let lattice = |rows: &[Vec<String>]| -> Result<Lattice> {
            Lattice::new(n, rows.iter().map(|r| parse_vec(r)).collect::<Result<Vec<_>>>()?)
        };
        let t_components = doc.t_components.iter().map(|c| lattice(c)).collect::<Result<Vec<_>>>()?;
        let t_form = LinearForm::new(
            doc.t_form
                .iter()
                .map(|x| {
                    x.trim()
                        .parse::<BigRational>()
                        .map_err(|_| Error::Parse(format!("'{x}' is not a rational number")))
                })
                .collect::<Result<_>>()?,
        );
        let xi = Element::new(parse_vec(&doc.xi)?);
        let u = doc.u_sublattice.as_deref().map(lattice).transpose()?;
        let mut sw = GradedSandwich::new(s, t_components, t_form, xi, u)?;
        if let Some(parts) = &doc.s0_decomposition {
            sw.set_s0_decomposition(parts.iter().map(|p| parse_vec(p).map(Element::new)).collect::<Result<_>>()?)?;
        }
        Ok(sw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SandwichDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

/// On-disk sandwich. Lattices are lists of rows in `S`-coordinates, the form
/// is a list of rationals such as `"1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichDoc {
    pub algebra: AlgebraDoc,
    pub t_components: Vec<Vec<Vec<String>>>,
    pub t_form: Vec<String>,
    pub xi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_sublattice: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s0_decomposition: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}
