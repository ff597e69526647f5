//! The group law on a pointed quadric intersection over Q.

use super::curve::{ProjPoint, QICurve, QuadricPair};
use super::reduce::{reduce, BirationalMaps};
use super::weierstrass::{OrderCertificate, WPoint, WeierstrassModel};
use super::CurveError;

/// A nonsingular quadric intersection with a chosen origin and a cached
/// Weierstrass reduction.
#[derive(Clone, Debug)]
pub struct QiGroup {
    pair: QuadricPair,
    model: WeierstrassModel,
    maps: BirationalMaps,
}

impl QiGroup {
    pub fn new(pair: QuadricPair, origin: &ProjPoint) -> Result<Self, CurveError> {
        let (model, maps) = reduce(&pair, origin)?;
        Ok(QiGroup { pair, model, maps })
    }

    /// Diagonal curve with the all-plus two-torsion point as origin.
    pub fn from_curve(curve: &QICurve) -> Result<Self, CurveError> {
        if !curve.is_nonsingular() {
            return Err(CurveError::Singular);
        }
        Self::new(curve.quadrics(), &curve.origin()?)
    }

    pub fn model(&self) -> &WeierstrassModel {
        &self.model
    }

    pub fn maps(&self) -> &BirationalMaps {
        &self.maps
    }

    pub fn origin(&self) -> &ProjPoint {
        self.maps.origin()
    }

    pub fn pair(&self) -> &QuadricPair {
        &self.pair
    }

    fn check(&self, p: &ProjPoint) -> Result<(), CurveError> {
        if self.pair.contains(p) {
            Ok(())
        } else {
            Err(CurveError::NotOnCurve(p.to_string()))
        }
    }

    pub fn forward(&self, p: &ProjPoint) -> Result<WPoint, CurveError> {
        self.check(p)?;
        Ok(self.maps.forward(&self.model, p))
    }

    pub fn backward(&self, q: &WPoint) -> Result<ProjPoint, CurveError> {
        let p = self.maps.backward(&self.model, q)?;
        debug_assert!(self.pair.contains(&p));
        Ok(p)
    }

    pub fn add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint, CurveError> {
        let s = self.model.add(&self.forward(p)?, &self.forward(q)?);
        self.backward(&s)
    }

    pub fn neg(&self, p: &ProjPoint) -> Result<ProjPoint, CurveError> {
        let n = self.model.neg(&self.forward(p)?);
        self.backward(&n)
    }

    pub fn mul(&self, p: &ProjPoint, n: i64) -> Result<ProjPoint, CurveError> {
        let m = self.model.mul(&self.forward(p)?, n);
        self.backward(&m)
    }

    pub fn certify(&self, p: &ProjPoint) -> Result<OrderCertificate, CurveError> {
        Ok(self.model.certify(&self.forward(p)?))
    }
}

fn group_for(curve: &QICurve, origin: &ProjPoint) -> Result<QiGroup, CurveError> {
    if !curve.is_nonsingular() {
        return Err(CurveError::Singular);
    }
    QiGroup::new(curve.quadrics(), origin)
}

pub fn reduce_to_weierstrass(
    curve: &QICurve,
    origin: &ProjPoint,
) -> Result<(WeierstrassModel, BirationalMaps), CurveError> {
    let g = group_for(curve, origin)?;
    Ok((g.model, g.maps))
}

pub fn group_add(
    curve: &QICurve,
    origin: &ProjPoint,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<ProjPoint, CurveError> {
    group_for(curve, origin)?.add(p, q)
}

pub fn certify_infinite_order(
    curve: &QICurve,
    origin: &ProjPoint,
    p: &ProjPoint,
) -> Result<OrderCertificate, CurveError> {
    group_for(curve, origin)?.certify(p)
}
