//! JSON encodings of fixtures: a single-key object naming the kind of value.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::ordgrp::FinPreordGroup;
use crate::error::{Error, Result};
use crate::preorder::{FinPreorder, MonotoneMap};
use crate::quantale::FinQuantale;
use crate::relation::{IdealRel, Rel};
use crate::vcat::FinVCat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderDto {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDto {
    pub dom: PreorderDto,
    pub cod: PreorderDto,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelDto {
    pub dom: PreorderDto,
    pub cod: PreorderDto,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub ideal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleDto {
    pub size: usize,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
}

/// A quantale given by fixture name (`"V2"`, `"min3"`, ...) or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuantaleRef {
    Named(String),
    Inline(QuantaleDto),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VCatDto {
    pub quantale: QuantaleRef,
    pub size: usize,
    pub hom: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDto {
    pub order: usize,
    pub op: Vec<Vec<usize>>,
    pub cone: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fixture {
    Preorder(PreorderDto),
    Map(MapDto),
    Rel(RelDto),
    Quantale(QuantaleDto),
    Vcat(VCatDto),
    Group(GroupDto),
}

/// A decoded and validated fixture.
#[derive(Debug, Clone)]
pub enum Loaded {
    Preorder(FinPreorder),
    Map(MonotoneMap),
    Rel(Rel),
    Ideal(IdealRel),
    Quantale(FinQuantale),
    VCat(FinVCat),
    Group(FinPreordGroup),
}

fn size_check(what: &str, declared: usize, actual: usize) -> Result<()> {
    if declared == actual {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "{what}: declared size {declared}, found {actual}"
        )))
    }
}

impl From<&FinPreorder> for PreorderDto {
    fn from(p: &FinPreorder) -> Self {
        PreorderDto {
            size: p.size(),
            leq: p.rows(),
        }
    }
}

impl TryFrom<&PreorderDto> for FinPreorder {
    type Error = Error;
    fn try_from(d: &PreorderDto) -> Result<FinPreorder> {
        size_check("preorder", d.size, d.leq.len())?;
        FinPreorder::from_matrix(&d.leq)
    }
}

impl From<&MonotoneMap> for MapDto {
    fn from(f: &MonotoneMap) -> Self {
        MapDto {
            dom: f.dom().into(),
            cod: f.cod().into(),
            table: f.table().to_vec(),
        }
    }
}

impl TryFrom<&MapDto> for MonotoneMap {
    type Error = Error;
    fn try_from(d: &MapDto) -> Result<MonotoneMap> {
        MonotoneMap::new((&d.dom).try_into()?, (&d.cod).try_into()?, d.table.clone())
    }
}

impl RelDto {
    pub fn from_rel(r: &Rel, ideal: bool) -> RelDto {
        RelDto {
            dom: r.dom().into(),
            cod: r.cod().into(),
            pairs: r.pairs().map(|(x, y)| [x, y]).collect(),
            ideal,
        }
    }

    pub fn to_rel(&self) -> Result<Rel> {
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&[x, y]| (x, y)).collect();
        Rel::from_pairs(&(&self.dom).try_into()?, &(&self.cod).try_into()?, &pairs)
    }
}

impl From<&FinQuantale> for QuantaleDto {
    fn from(v: &FinQuantale) -> Self {
        QuantaleDto {
            size: v.size(),
            leq: v.leq_rows(),
            tensor: v.tensor_rows(),
            unit: v.unit(),
        }
    }
}

impl TryFrom<&QuantaleDto> for FinQuantale {
    type Error = Error;
    fn try_from(d: &QuantaleDto) -> Result<FinQuantale> {
        size_check("quantale", d.size, d.leq.len())?;
        FinQuantale::new(d.leq.clone(), d.tensor.clone(), d.unit)
    }
}

impl QuantaleRef {
    pub fn resolve(&self) -> Result<FinQuantale> {
        match self {
            QuantaleRef::Named(name) => FinQuantale::fixture(name)
                .ok_or_else(|| Error::Parse(format!("unknown quantale fixture {name:?}"))),
            QuantaleRef::Inline(d) => d.try_into(),
        }
    }
}

impl VCatDto {
    pub fn from_vcat(x: &FinVCat, quantale: QuantaleRef) -> VCatDto {
        VCatDto {
            quantale,
            size: x.size(),
            hom: x.hom_rows(),
        }
    }

    pub fn to_vcat(&self) -> Result<FinVCat> {
        size_check("vcat", self.size, self.hom.len())?;
        FinVCat::new(Arc::new(self.quantale.resolve()?), self.hom.clone())
    }
}

impl GroupDto {
    pub fn to_group(&self) -> Result<FinPreordGroup> {
        size_check("group", self.order, self.op.len())?;
        FinPreordGroup::new(self.op.clone(), &self.cone)
    }
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("fixtures serialize")
    }

    pub fn load(&self) -> Result<Loaded> {
        Ok(match self {
            Fixture::Preorder(d) => Loaded::Preorder(d.try_into()?),
            Fixture::Map(d) => Loaded::Map(d.try_into()?),
            Fixture::Rel(d) if d.ideal => Loaded::Ideal(IdealRel::new(d.to_rel()?)?),
            Fixture::Rel(d) => Loaded::Rel(d.to_rel()?),
            Fixture::Quantale(d) => Loaded::Quantale(d.try_into()?),
            Fixture::Vcat(d) => Loaded::VCat(d.to_vcat()?),
            Fixture::Group(d) => Loaded::Group(d.to_group()?),
        })
    }
}

pub fn preorder_json(p: &FinPreorder) -> serde_json::Value {
    Fixture::Preorder(p.into()).to_json()
}

pub fn map_json(f: &MonotoneMap) -> serde_json::Value {
    Fixture::Map(f.into()).to_json()
}

pub fn rel_json(r: &Rel) -> serde_json::Value {
    Fixture::Rel(RelDto::from_rel(r, false)).to_json()
}

pub fn ideal_json(r: &IdealRel) -> serde_json::Value {
    Fixture::Rel(RelDto::from_rel(r, true)).to_json()
}

/// Encodes a V-category with its quantale inline.
pub fn vcat_json(x: &FinVCat) -> serde_json::Value {
    let q = QuantaleRef::Inline(x.quantale().as_ref().into());
    Fixture::Vcat(VCatDto::from_vcat(x, q)).to_json()
}
