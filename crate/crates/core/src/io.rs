//! JSON formats shared by the library and the command line.
//!
//! Field: `{"n": 8, "modulus": "0x11b"}`, with `modulus` optional (the least
//! irreducible polynomial of degree n when omitted).
//!
//! Polynomial: `{"field": <field>, "coeffs": ["0x1", "0x0", ...]}` where
//! `coeffs[i]` is the coefficient of `x^i`. For `f = sum_k a_(m-k) x^k` this
//! means `a_j = coeffs[m - j]`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::UPoly;

/// Version tag carried by every JSON document the tools emit.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

impl FieldSpec {
    pub fn of(ctx: &FieldCtx) -> Self {
        FieldSpec { n: ctx.n(), modulus: Some(format!("{:#x}", ctx.modulus())) }
    }

    pub fn to_ctx(&self) -> Result<FieldCtx> {
        let modulus = match &self.modulus {
            None => None,
            Some(s) => {
                let t = s.trim().trim_start_matches("0x").trim_start_matches("0X");
                Some(
                    u128::from_str_radix(t, 16)
                        .map_err(|e| Error::InvalidArgument(format!("bad modulus {s:?}: {e}")))?,
                )
            }
        };
        FieldCtx::new(self.n, modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub field: FieldSpec,
    pub coeffs: Vec<FieldElem>,
}

impl PolyJson {
    pub fn of(p: &UPoly) -> Self {
        PolyJson { field: FieldSpec::of(p.ctx()), coeffs: p.coeffs().to_vec() }
    }

    pub fn to_poly(&self) -> Result<UPoly> {
        UPoly::try_new(&self.field.to_ctx()?, self.coeffs.clone())
    }
}

impl Serialize for UPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::of(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for UPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PolyJson::deserialize(d)?.to_poly().map_err(serde::de::Error::custom)
    }
}

/// Parse a polynomial document; the error names the line and column.
pub fn parse_poly(text: &str) -> Result<UPoly> {
    serde_json::from_str::<UPoly>(text).map_err(|e| Error::InvalidArgument(format!("polynomial JSON: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let k = FieldCtx::default_for(8).unwrap();
        let p = UPoly::new(&k, vec![FieldElem::from_bits(0x1f), FieldElem::ZERO, FieldElem::ONE]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"field":{"n":8,"modulus":"0x11b"},"coeffs":["0x1f","0x0","0x1"]}"#);
        assert_eq!(parse_poly(&text).unwrap(), p);
    }

    #[test]
    fn default_modulus_and_errors() {
        let p = parse_poly(r#"{"field":{"n":3},"coeffs":["0x7","0x1"]}"#).unwrap();
        assert_eq!(p.ctx().modulus(), 0b1011);
        assert!(parse_poly(r#"{"field":{"n":3},"coeffs":["0x8"]}"#).is_err());
        assert!(parse_poly(r#"{"field":{"n":3,"modulus":"0x9"},"coeffs":[]}"#).is_err());
        let err = parse_poly("{\n\"field\": {\"n\": 3},\n\"coeffs\": [1]}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }
}
