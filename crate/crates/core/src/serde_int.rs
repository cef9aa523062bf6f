//! Serde helpers for `BigInt`: written as a JSON number when it fits in
//! `i64`, otherwise as a decimal string. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

fn from_repr<E: serde::de::Error>(r: IntRepr) -> Result<BigInt, E> {
    match r {
        IntRepr::Num(n) => Ok(BigInt::from(n)),
        IntRepr::Str(s) => s.trim().parse().map_err(E::custom),
    }
}

pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match n.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(n),
    }
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    from_repr(IntRepr::deserialize(d)?)
}

/// Same encoding for a pair `[a0, a1]`.
pub mod pair {
    use super::*;
    use serde::ser::SerializeTuple;

    struct Wrap<'a>(&'a BigInt);

    impl serde::Serialize for Wrap<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            super::serialize(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(p: &[BigInt; 2], s: S) -> Result<S::Ok, S::Error> {
        let mut tup = s.serialize_tuple(2)?;
        tup.serialize_element(&Wrap(&p[0]))?;
        tup.serialize_element(&Wrap(&p[1]))?;
        tup.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; 2], D::Error> {
        let [a, b] = <[IntRepr; 2]>::deserialize(d)?;
        Ok([from_repr(a)?, from_repr(b)?])
    }
}
