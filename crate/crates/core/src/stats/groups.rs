use std::collections::BTreeMap;

use serde::Serialize;

use super::{check_finite, StatsError};
use crate::model::Method;
use crate::scalar::Real;

/// Near (A) or far (B) from English.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Group {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupAssignment<T> {
    pub method: Method,
    pub cutline: T,
    pub groups: BTreeMap<String, Group>,
    pub counts: (usize, usize),
}

impl<T> GroupAssignment<T> {
    pub fn members(&self, group: Group) -> impl Iterator<Item = &str> {
        self.groups.iter().filter(move |(_, &g)| g == group).map(|(c, _)| c.as_str())
    }
}

/// Assigns each country to group A when its distance is at or below
/// `cutline`, to group B otherwise.
pub fn split_groups<T: Real>(method: Method, distances: &[(String, T)], cutline: T) -> Result<GroupAssignment<T>, StatsError> {
    if distances.is_empty() {
        return Err(StatsError::Empty);
    }
    let values: Vec<T> = distances.iter().map(|(_, v)| *v).collect();
    check_finite(&values)?;
    check_finite(&[cutline])?;
    let mut groups = BTreeMap::new();
    for (country, value) in distances {
        let g = if *value <= cutline { Group::A } else { Group::B };
        groups.insert(country.clone(), g);
    }
    let n_a = groups.values().filter(|&&g| g == Group::A).count();
    let n_b = groups.len() - n_a;
    Ok(GroupAssignment { method, cutline, groups, counts: (n_a, n_b) })
}
