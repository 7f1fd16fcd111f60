//! JSON documents for series, derivations, automorphisms and KV reports.
//!
//! Terms are listed in canonical order and coefficients are `"p/q"` strings, so equal
//! values always serialize to identical bytes.

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::cyclic::CyclicWord;
use crate::error::{GtError, Result};
use crate::rational::Q;
use crate::series::{Key, LinComb, Series};
use crate::signature::{Signature, Word};
use crate::tangential::{TAut, TDer};

/// A basis key with a JSON spelling inside a term object.
pub trait JsonKey: Key {
    /// Name of the field holding the key.
    const FIELD: &'static str;
    fn to_json(&self, sig: &Signature) -> Value;
    fn from_json(v: &Value, sig: &Signature) -> Result<Self>;
}

fn names(sig: &Signature, w: &[u8]) -> Value {
    Value::from(sig.word_names(w))
}

fn parse_names(v: &Value, sig: &Signature) -> Result<Word> {
    let arr = v.as_array().ok_or_else(|| GtError::Parse(format!("expected a list of generators, got {v}")))?;
    arr.iter()
        .map(|x| {
            let s = x.as_str().ok_or_else(|| GtError::Parse(format!("expected a generator name, got {x}")))?;
            sig.parse_letter(s)
        })
        .collect()
}

fn parse_list<const K: usize>(v: &Value) -> Result<&[Value]> {
    match v.as_array() {
        Some(a) if a.len() == K => Ok(a),
        _ => Err(GtError::Parse(format!("expected a list of {K} words, got {v}"))),
    }
}

impl JsonKey for Word {
    const FIELD: &'static str = "word";
    fn to_json(&self, sig: &Signature) -> Value {
        names(sig, self)
    }
    fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        parse_names(v, sig)
    }
}

impl JsonKey for CyclicWord {
    const FIELD: &'static str = "cyclic_word";
    fn to_json(&self, sig: &Signature) -> Value {
        names(sig, self.letters())
    }
    fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        Ok(CyclicWord::new(&parse_names(v, sig)?))
    }
}

impl JsonKey for (Word, Word) {
    const FIELD: &'static str = "words";
    fn to_json(&self, sig: &Signature) -> Value {
        Value::from(vec![names(sig, &self.0), names(sig, &self.1)])
    }
    fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        let a = parse_list::<2>(v)?;
        Ok((parse_names(&a[0], sig)?, parse_names(&a[1], sig)?))
    }
}

impl JsonKey for (CyclicWord, CyclicWord) {
    const FIELD: &'static str = "cyclic_words";
    fn to_json(&self, sig: &Signature) -> Value {
        Value::from(vec![self.0.to_json(sig), self.1.to_json(sig)])
    }
    fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        let a = parse_list::<2>(v)?;
        Ok((CyclicWord::from_json(&a[0], sig)?, CyclicWord::from_json(&a[1], sig)?))
    }
}

impl JsonKey for (CyclicWord, CyclicWord, CyclicWord) {
    const FIELD: &'static str = "cyclic_words";
    fn to_json(&self, sig: &Signature) -> Value {
        Value::from(vec![self.0.to_json(sig), self.1.to_json(sig), self.2.to_json(sig)])
    }
    fn from_json(v: &Value, sig: &Signature) -> Result<Self> {
        let a = parse_list::<3>(v)?;
        Ok((CyclicWord::from_json(&a[0], sig)?, CyclicWord::from_json(&a[1], sig)?, CyclicWord::from_json(&a[2], sig)?))
    }
}

struct Term<'a, K> {
    sig: &'a Signature,
    key: &'a K,
    coeff: &'a Q,
}

impl<K: JsonKey> Serialize for Term<'_, K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry(K::FIELD, &self.key.to_json(self.sig))?;
        m.serialize_entry("coeff", self.coeff)?;
        m.end()
    }
}

impl<K: JsonKey> Serialize for LinComb<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let sig = self.sig();
        let terms: Vec<_> =
            self.sorted_terms().into_iter().map(|(key, coeff)| Term { sig: &sig, key, coeff }).collect();
        let mut s = serializer.serialize_struct("LinComb", 3)?;
        s.serialize_field("signature", &sig)?;
        s.serialize_field("valid_degree", &self.valid_degree())?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinComb {
    signature: Signature,
    valid_degree: usize,
    terms: Vec<Map<String, Value>>,
}

fn checked_signature(sig: Signature) -> Result<Signature> {
    Signature::new(sig.g, sig.n)
}

impl RawLinComb {
    fn build<K: JsonKey>(self) -> Result<LinComb<K>> {
        let sig = checked_signature(self.signature)?;
        let mut out = LinComb::zero(sig, self.valid_degree);
        for t in self.terms {
            let key = t.get(K::FIELD).ok_or_else(|| GtError::Parse(format!("term without `{}` field", K::FIELD)))?;
            let key = K::from_json(key, &sig)?;
            let coeff = match t.get("coeff") {
                Some(Value::String(s)) => s.parse::<Q>()?,
                Some(Value::Number(n)) if n.is_i64() => Q::from_int(n.as_i64().unwrap()),
                _ => return Err(GtError::Parse("term without a rational `coeff`".into())),
            };
            if t.len() != 2 {
                return Err(GtError::Parse(format!("unexpected fields in term {t:?}")));
            }
            let d = key.degree(&sig);
            if d > self.valid_degree {
                return Err(GtError::Parse(format!("term of degree {d} beyond valid degree {}", self.valid_degree)));
            }
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

impl<'de, K: JsonKey> Deserialize<'de> for LinComb<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        RawLinComb::deserialize(deserializer)?.build().map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ImageDoc {
    generator: String,
    image: Series,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    signature: Signature,
    images: Vec<ImageDoc>,
    tangential: Vec<Series>,
}

impl MapDoc {
    fn new(sig: Signature, letters: impl Iterator<Item = u8>, images: &[Series], tangential: &[Series]) -> Self {
        MapDoc {
            signature: sig,
            images: letters
                .zip(images)
                .map(|(l, s)| ImageDoc { generator: sig.letter_name(l), image: s.clone() })
                .collect(),
            tangential: tangential.to_vec(),
        }
    }

    /// Images in canonical generator order for the first `count` letters.
    fn into_parts(self, count: usize) -> Result<(Signature, Vec<Series>, Vec<Series>)> {
        let sig = checked_signature(self.signature)?;
        let mut slots: Vec<Option<Series>> = vec![None; count];
        for doc in self.images {
            let l = sig.parse_letter(&doc.generator)? as usize;
            if l >= count {
                return Err(GtError::Parse(format!("no image expected for `{}`", doc.generator)));
            }
            sig.check_same(&doc.image.sig())?;
            if slots[l].replace(doc.image).is_some() {
                return Err(GtError::Parse(format!("duplicate image for `{}`", doc.generator)));
            }
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(l, s)| s.ok_or_else(|| GtError::Parse(format!("missing image for `{}`", sig.letter_name(l as u8)))))
            .collect::<Result<Vec<_>>>()?;
        if self.tangential.len() != sig.n {
            return Err(GtError::Parse(format!(
                "expected {} tangential components, got {}",
                sig.n,
                self.tangential.len()
            )));
        }
        for t in &self.tangential {
            sig.check_same(&t.sig())?;
        }
        Ok((sig, images, self.tangential))
    }
}

impl Serialize for TDer {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let sig = self.sig();
        MapDoc::new(sig, sig.letters(), &self.sym, &self.tangential).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TDer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = MapDoc::deserialize(deserializer)?;
        let count = 2 * doc.signature.g;
        let (sig, sym, tangential) = doc.into_parts(count).map_err(de::Error::custom)?;
        Ok(TDer::new(sig, sym, tangential))
    }
}

impl Serialize for TAut {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let sig = self.sig();
        MapDoc::new(sig, sig.letters(), &self.images, &self.tangential).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TAut {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = MapDoc::deserialize(deserializer)?;
        let count = doc.signature.g * 2 + doc.signature.n;
        let (sig, images, tangential) = doc.into_parts(count).map_err(de::Error::custom)?;
        Ok(TAut::new(sig, images, tangential))
    }
}

/// Serializes to pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub fn from_str<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| GtError::Parse(e.to_string()))
}
