use super::{gf2x, FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::poly::UPoly;

/// Largest extension degree for which the root of the base modulus is found
/// by scanning the extension field.
const SCAN_LIMIT: u32 = 24;

/// Ring embedding GF(2^a) -> GF(2^b) for a | b, sending the base generator
/// to the least root (by encoding) of the base modulus inside the extension.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: FieldCtx,
    ext: FieldCtx,
    image_of_generator: FieldElem,
    powers: Vec<FieldElem>,
}

impl Embedding {
    pub fn new(base: &FieldCtx, ext: &FieldCtx) -> Result<Self> {
        if ext.n() % base.n() != 0 {
            return Err(Error::NotSubfield { base: base.n(), ext: ext.n() });
        }
        let root = if ext.n() <= SCAN_LIMIT {
            least_root_by_scan(base.modulus(), ext)
        } else {
            least_root_by_splitting(base.modulus(), ext)?
        }
        .ok_or_else(|| Error::Invariant("base modulus has no root in the extension".into()))?;
        Ok(Self::with_root(base, ext, root))
    }

    fn with_root(base: &FieldCtx, ext: &FieldCtx, root: FieldElem) -> Self {
        let mut powers = Vec::with_capacity(base.n() as usize);
        let mut p = FieldElem::ONE;
        for _ in 0..base.n() {
            powers.push(p);
            p = ext.mul(p, root);
        }
        Embedding {
            base: base.clone(),
            ext: ext.clone(),
            image_of_generator: root,
            powers,
        }
    }

    /// Embedding of GF(2) (any modulus) into `ext`.
    pub fn from_prime_field(ext: &FieldCtx) -> Self {
        Self::with_root(&FieldCtx::gf2(), ext, FieldElem::ONE)
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    pub fn image_of_generator(&self) -> FieldElem {
        self.image_of_generator
    }

    pub fn embed(&self, a: FieldElem) -> Result<FieldElem> {
        if !self.base.contains(a) {
            return Err(Error::ElementOutOfRange { n: self.base.n(), bits: a.bits() });
        }
        let mut acc = FieldElem::ZERO;
        let mut bits = a.bits();
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                acc += self.powers[i];
            }
            bits >>= 1;
            i += 1;
        }
        Ok(acc)
    }
}

fn least_root_by_scan(modulus: u128, ext: &FieldCtx) -> Option<FieldElem> {
    ext.elements().find(|&z| ext.eval_gf2_poly(modulus, z).is_zero())
}

fn least_root_by_splitting(modulus: u128, ext: &FieldCtx) -> Result<Option<FieldElem>> {
    let coeffs = (0..=gf2x::degree(modulus))
        .map(|i| FieldElem::from_bits(((modulus >> i) & 1) as u64))
        .collect();
    let p = UPoly::new(ext, coeffs);
    Ok(p.roots()?.into_iter().min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_poly_over_gf2(ext: &FieldCtx, z: FieldElem) -> u128 {
        // product of (x + conjugate) over the Frobenius orbit of z
        let mut orbit = vec![z];
        let mut c = ext.sqr(z);
        while c != z {
            orbit.push(c);
            c = ext.sqr(c);
        }
        let mut poly = UPoly::one(ext);
        for c in orbit {
            poly = &poly * &UPoly::new(ext, vec![c, FieldElem::ONE]);
        }
        poly.coeffs().iter().enumerate().fold(0u128, |acc, (i, c)| {
            assert!(c.bits() <= 1, "minimal polynomial not over GF(2)");
            acc | ((c.bits() as u128) << i)
        })
    }

    #[test]
    fn homomorphism_and_minimal_polynomial() {
        for (a, b) in [(1, 4), (2, 4), (3, 6), (4, 8), (4, 12), (5, 20), (8, 24), (6, 30), (13, 26)] {
            let base = FieldCtx::default_for(a).unwrap();
            let ext = FieldCtx::default_for(b).unwrap();
            let emb = Embedding::new(&base, &ext).unwrap();
            assert_eq!(emb.embed(FieldElem::ZERO).unwrap(), FieldElem::ZERO);
            assert_eq!(emb.embed(FieldElem::ONE).unwrap(), FieldElem::ONE);
            assert_eq!(min_poly_over_gf2(&ext, emb.image_of_generator()), base.modulus());
            let samples: Vec<FieldElem> = base.elements().take(64).collect();
            for &x in &samples {
                let ex = emb.embed(x).unwrap();
                // a-fold Frobenius fixes the image of GF(2^a)
                assert_eq!(ext.frobenius(ex, a), ex);
                for &y in samples.iter().step_by(5) {
                    assert_eq!(emb.embed(x + y).unwrap(), ex + emb.embed(y).unwrap());
                    assert_eq!(emb.embed(base.mul(x, y)).unwrap(), ext.mul(ex, emb.embed(y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn scan_and_splitting_pick_the_same_root() {
        for (a, b) in [(2, 6), (4, 16), (5, 20), (3, 24)] {
            let base = FieldCtx::default_for(a).unwrap();
            let ext = FieldCtx::default_for(b).unwrap();
            assert_eq!(
                least_root_by_scan(base.modulus(), &ext),
                least_root_by_splitting(base.modulus(), &ext).unwrap()
            );
        }
    }

    #[test]
    fn errors() {
        let base = FieldCtx::default_for(3).unwrap();
        let ext = FieldCtx::default_for(4).unwrap();
        assert!(matches!(Embedding::new(&base, &ext), Err(Error::NotSubfield { .. })));
        let ext = FieldCtx::default_for(6).unwrap();
        let emb = Embedding::new(&base, &ext).unwrap();
        assert!(emb.embed(FieldElem::from_bits(8)).is_err());
    }
}
