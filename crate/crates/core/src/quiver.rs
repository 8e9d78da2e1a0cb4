//! Radical-cube-zero path algebras and the two Brauer-line families built from them.
//!
//! Paths compose in functional order: for arrows `p: i -> j` and `q: j -> k` the
//! product `q * p` is the path "p then q". Relation paths are listed in traversal
//! order, first arrow first.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraData, AlgebraParts, Parity, Provenance};
use crate::error::{Error, Result};
use crate::linalg::{hermite_form, BaseRing, ZMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub from: String,
    pub to: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// A length-two path in traversal order.
pub type Path2 = [String; 2];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSystem {
    /// Paths of this length or longer vanish. Only 3 is supported.
    pub max_length: usize,
    #[serde(default)]
    pub zero_paths: Vec<Path2>,
    #[serde(default)]
    pub equal_pairs: Vec<(Path2, Path2)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: RelationSystem,
}

impl QuiverSpec {
    fn validate(&self) -> Result<(HashMap<&str, usize>, Vec<(usize, usize)>)> {
        let mut vidx = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vidx.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidQuiver(format!("vertex '{v}' declared twice")));
            }
        }
        let mut seen = HashMap::new();
        let mut ends = Vec::new();
        for a in &self.arrows {
            let (Some(&s), Some(&t)) = (vidx.get(a.from.as_str()), vidx.get(a.to.as_str())) else {
                return Err(Error::InvalidQuiver(format!(
                    "arrow '{}' has an undeclared endpoint",
                    a.label
                )));
            };
            if seen.insert(a.label.as_str(), ()).is_some() || vidx.contains_key(a.label.as_str()) {
                return Err(Error::InvalidQuiver(format!("label '{}' is not unique", a.label)));
            }
            ends.push((s, t));
        }
        if self.vertices.is_empty() {
            return Err(Error::InvalidQuiver("no vertices".into()));
        }
        Ok((vidx, ends))
    }
}

/// Path algebra modulo paths of length three and the given degree-two relations.
/// Basis: vertices, then arrows, then one representative per surviving class of
/// length-two paths, ordered by base vertex.
pub fn build_path_algebra(q: &QuiverSpec, r: &RelationSystem, base: BaseRing) -> Result<AlgebraData> {
    if r.max_length != 3 {
        return Err(Error::InvalidRelation(format!(
            "only max_length = 3 is supported, got {}",
            r.max_length
        )));
    }
    let (_, ends) = q.validate()?;
    let nv = q.vertices.len();
    let na = q.arrows.len();
    let arrow_idx: HashMap<&str, usize> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(i, a)| (a.label.as_str(), i))
        .collect();

    // All composable length-two paths (first, second), ordered by base vertex.
    let mut paths: Vec<(usize, usize)> = Vec::new();
    for (p, &(_, tp)) in ends.iter().enumerate() {
        for (s, &(ss, _)) in ends.iter().enumerate() {
            if ss == tp {
                paths.push((p, s));
            }
        }
    }
    paths.sort_by_key(|&(p, s)| (ends[p].0, p, s));
    let path_pos: HashMap<(usize, usize), usize> =
        paths.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let lookup = |path: &Path2| -> Result<usize> {
        let a = arrow_idx
            .get(path[0].as_str())
            .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow '{}'", path[0])))?;
        let b = arrow_idx
            .get(path[1].as_str())
            .ok_or_else(|| Error::InvalidRelation(format!("unknown arrow '{}'", path[1])))?;
        path_pos.get(&(*a, *b)).copied().ok_or_else(|| {
            Error::InvalidRelation(format!("'{}' then '{}' is not composable", path[0], path[1]))
        })
    };

    let np = paths.len();
    let mut rel_rows = Vec::new();
    for z in &r.zero_paths {
        let mut row = vec![BigInt::zero(); np];
        row[lookup(z)?] = BigInt::one();
        rel_rows.push(row);
    }
    for (x, y) in &r.equal_pairs {
        let mut row = vec![BigInt::zero(); np];
        row[lookup(x)?] += 1;
        row[lookup(y)?] -= 1;
        rel_rows.push(row);
    }
    // Reduce each path to the non-pivot columns of the relation Hermite form.
    let (h, _) = hermite_form(&ZMatrix::from_rows(np, rel_rows)?);
    let mut pivot_row: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..h.rows() {
        if let Some(c) = (0..np).find(|&c| !h[(i, c)].is_zero()) {
            if !h[(i, c)].is_one() {
                return Err(Error::InvalidRelation(
                    "relations leave torsion in degree two".into(),
                ));
            }
            pivot_row.insert(c, i);
        }
    }
    let survivors: Vec<usize> = (0..np).filter(|c| !pivot_row.contains_key(c)).collect();
    let surv_pos: HashMap<usize, usize> = survivors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    // reduce[path] = combination of survivors.
    let reduce: Vec<Vec<(usize, BigInt)>> = (0..np)
        .map(|c| match pivot_row.get(&c) {
            None => vec![(surv_pos[&c], BigInt::one())],
            Some(&i) => survivors
                .iter()
                .enumerate()
                .filter(|(_, &sc)| !h[(i, sc)].is_zero())
                .map(|(k, &sc)| (k, -h[(i, sc)].clone()))
                .collect(),
        })
        .collect();

    let off_a = nv;
    let off_c = nv + na;
    let rank = off_c + survivors.len();
    let mut sc = Vec::new();
    let one = BigInt::one;
    for v in 0..nv {
        sc.push((v, v, v, one()));
    }
    for (a, &(s, t)) in ends.iter().enumerate() {
        sc.push((t, off_a + a, off_a + a, one()));
        sc.push((off_a + a, s, off_a + a, one()));
    }
    for (k, &c) in survivors.iter().enumerate() {
        let (p, s) = paths[c];
        let (start, end) = (ends[p].0, ends[s].1);
        sc.push((end, off_c + k, off_c + k, one()));
        sc.push((off_c + k, start, off_c + k, one()));
    }
    for (c, &(p, s)) in paths.iter().enumerate() {
        // b_s * b_p is "p then s".
        for (k, coef) in &reduce[c] {
            sc.push((off_a + s, off_a + p, off_c + k, coef.clone()));
        }
    }

    let mut labels: Vec<String> = q.vertices.iter().map(|v| format!("e_{v}")).collect();
    labels.extend(q.arrows.iter().map(|a| a.label.clone()));
    labels.extend(survivors.iter().map(|&c| {
        let (p, s) = paths[c];
        format!("{}*{}", q.arrows[s].label, q.arrows[p].label)
    }));
    let mut degrees = vec![0u32; nv];
    degrees.extend(std::iter::repeat_n(1, na));
    degrees.extend(std::iter::repeat_n(2, survivors.len()));
    let parities = degrees.iter().map(|&d| Parity::from_bit((d % 2) as u8)).collect();
    let mut unit = vec![BigInt::zero(); rank];
    for u in unit.iter_mut().take(nv) {
        *u = BigInt::one();
    }
    AlgebraData::new(AlgebraParts {
        base,
        labels,
        degrees,
        parities,
        unit,
        structure_constants: sc,
        top_degree: Some(2),
        provenance: None,
    })
}

/// Zero relations for every non-cycle length-two path.
fn non_cycle_zero_paths(q: &QuiverSpec) -> Vec<Path2> {
    let mut out = Vec::new();
    for p in &q.arrows {
        for s in &q.arrows {
            if p.to == s.from && p.from != s.to {
                out.push([p.label.clone(), s.label.clone()]);
            }
        }
    }
    out
}

fn arrow(from: usize, to: usize, label: String) -> Arrow {
    Arrow {
        from: from.to_string(),
        to: to.to_string(),
        label,
    }
}

/// Quiver and relations of the Brauer line with vertices `1..=ell` (`ell >= 2`).
pub fn a_ell_quiver(ell: usize) -> (QuiverSpec, RelationSystem) {
    let vertices = (1..=ell).map(|v| v.to_string()).collect();
    let mut arrows = Vec::new();
    for j in 1..ell {
        arrows.push(arrow(j + 1, j, format!("a_{{{},{}}}", j, j + 1)));
        arrows.push(arrow(j, j + 1, format!("a_{{{},{}}}", j + 1, j)));
    }
    let q = QuiverSpec { vertices, arrows };
    let mut equal_pairs = Vec::new();
    for j in 2..ell {
        // a_{j,j-1} a_{j-1,j} = a_{j,j+1} a_{j+1,j}
        equal_pairs.push((
            [format!("a_{{{},{}}}", j - 1, j), format!("a_{{{},{}}}", j, j - 1)],
            [format!("a_{{{},{}}}", j + 1, j), format!("a_{{{},{}}}", j, j + 1)],
        ));
    }
    let r = RelationSystem {
        max_length: 3,
        zero_paths: non_cycle_zero_paths(&q),
        equal_pairs,
    };
    (q, r)
}

/// Quiver and relations of the Brauer line with a loop `u` at vertex 0, vertices `0..ell`.
pub fn a_tilde_ell_quiver(ell: usize) -> (QuiverSpec, RelationSystem) {
    let vertices = (0..ell).map(|v| v.to_string()).collect();
    let mut arrows = vec![arrow(0, 0, "u".into())];
    for j in 0..ell.saturating_sub(1) {
        arrows.push(arrow(j + 1, j, format!("a_{{{},{}}}", j, j + 1)));
        arrows.push(arrow(j, j + 1, format!("a_{{{},{}}}", j + 1, j)));
    }
    let q = QuiverSpec { vertices, arrows };
    let mut equal_pairs = Vec::new();
    if ell >= 2 {
        // u^2 = a_{0,1} a_{1,0}
        equal_pairs.push((["u".into(), "u".into()], ["a_{1,0}".into(), "a_{0,1}".into()]));
    }
    for j in 1..ell.saturating_sub(1) {
        equal_pairs.push((
            [format!("a_{{{},{}}}", j - 1, j), format!("a_{{{},{}}}", j, j - 1)],
            [format!("a_{{{},{}}}", j + 1, j), format!("a_{{{},{}}}", j, j + 1)],
        ));
    }
    let r = RelationSystem {
        max_length: 3,
        zero_paths: non_cycle_zero_paths(&q),
        equal_pairs,
    };
    (q, r)
}

/// Renames the degree-two basis elements `c_v` by base vertex.
fn relabel_socle(alg: AlgebraData, first_vertex: usize, prov: Provenance) -> Result<AlgebraData> {
    let mut parts = alg.parts();
    let mut v = first_vertex;
    for (i, d) in parts.degrees.iter().enumerate() {
        if *d == 2 {
            parts.labels[i] = format!("c_{v}");
            v += 1;
        }
    }
    parts.provenance = Some(prov);
    AlgebraData::new(parts)
}

/// `A_ell`: basis `e_1..e_ell`, arrows `a_{1,2}, a_{2,1}, ...`, socle `c_1..c_ell`.
pub fn canonical_a_ell(ell: usize, base: BaseRing) -> Result<AlgebraData> {
    if ell == 0 {
        return Err(Error::InvalidQuiver("ell must be positive".into()));
    }
    if ell == 1 {
        let one = BigInt::one;
        return AlgebraData::new(AlgebraParts {
            base,
            labels: vec!["e_1".into(), "c_1".into()],
            degrees: vec![0, 2],
            parities: vec![Parity::Even; 2],
            unit: vec![one(), BigInt::zero()],
            structure_constants: vec![(0, 0, 0, one()), (0, 1, 1, one()), (1, 0, 1, one())],
            top_degree: Some(2),
            provenance: Some(Provenance::AEll(1)),
        });
    }
    let (q, r) = a_ell_quiver(ell);
    relabel_socle(build_path_algebra(&q, &r, base)?, 1, Provenance::AEll(ell))
}

/// `Ã_ell`: basis `e_0..e_{ell-1}`, `u`, arrows, socle `c_0..c_{ell-1}` with `c_0 = u^2`.
pub fn canonical_a_tilde_ell(ell: usize, base: BaseRing) -> Result<AlgebraData> {
    if ell == 0 {
        return Err(Error::InvalidQuiver("ell must be positive".into()));
    }
    let (q, r) = a_tilde_ell_quiver(ell);
    relabel_socle(build_path_algebra(&q, &r, base)?, 0, Provenance::ATildeEll(ell))
}

pub fn build_from_doc(doc: &QuiverDoc, base: BaseRing) -> Result<AlgebraData> {
    build_path_algebra(
        &QuiverSpec {
            vertices: doc.vertices.clone(),
            arrows: doc.arrows.clone(),
        },
        &doc.relations,
        base,
    )
}
