//! Serde adapters: integers go out as decimal strings.

use num_bigint::BigInt;
use serde::Serializer;

use crate::linalg::Lattice;

pub(crate) fn ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub(crate) fn rows<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

pub(crate) fn lattice<S: Serializer>(l: &Lattice, s: S) -> Result<S::Ok, S::Error> {
    rows(l.basis(), s)
}
