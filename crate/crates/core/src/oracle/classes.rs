//! Superclasses `1 + G(g-1)G` by breadth-first closure.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::setpart::{enumerate_parts, LabeledSetPartition, PartitionIndex, SuperclassLabel};

use super::group::{Budget, Key, PatternGroup};

/// Bumped whenever the cached JSON layout changes.
pub const TABLE_FORMAT_VERSION: u32 = 1;

/// Orbit of `x` under the generators in `steps`, in discovery order.
pub(crate) fn orbit(x: &Key, steps: &dyn Fn(&Key) -> Vec<Key>) -> Vec<Key> {
    let mut seen: HashMap<Key, ()> = HashMap::new();
    seen.insert(x.clone(), ());
    let mut out = vec![x.clone()];
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for z in steps(&y) {
            if !seen.contains_key(&z) {
                seen.insert(z.clone(), ());
                out.push(z.clone());
                queue.push_back(z);
            }
        }
    }
    out
}

/// Superclasses of a pattern group, with sizes and a lookup from `g - 1`.
#[derive(Clone, Debug)]
pub struct SuperclassTable {
    group: PatternGroup,
    reps: Vec<Key>,
    labels: Vec<Option<SuperclassLabel>>,
    members: Vec<Vec<Key>>,
    class_of: HashMap<Key, usize>,
}

impl SuperclassTable {
    /// Orbits of `X ↦ xXy`. For `U_K` each class is labeled by the unique
    /// `u_μ` it contains and uses `u_μ - 1` as representative; otherwise the
    /// first element in enumeration order represents it.
    pub fn build(group: &PatternGroup, budget: &Budget) -> Result<Self> {
        let all = group.elements(budget)?;
        let gens = group.mask().to_vec();
        let steps = |x: &Key| -> Vec<Key> {
            let mut v = Vec::with_capacity(2 * gens.len());
            for &(i, j) in &gens {
                v.push(group.left_gen(x, i, j));
                v.push(group.right_gen(x, i, j));
            }
            v
        };
        let mut class_of: HashMap<Key, usize> = HashMap::with_capacity(all.len());
        let mut reps = Vec::new();
        let mut members = Vec::new();
        for x in &all {
            if class_of.contains_key(x) {
                continue;
            }
            let idx = reps.len();
            let orb = orbit(x, &steps);
            for y in &orb {
                class_of.insert(y.clone(), idx);
            }
            reps.push(x.clone());
            members.push(orb);
        }
        let mut table = Self {
            group: group.clone(),
            labels: vec![None; reps.len()],
            reps,
            members,
            class_of,
        };
        if let Some(k) = parabolic_index(group) {
            table.attach_labels(&k)?;
        }
        Ok(table)
    }

    fn attach_labels(&mut self, k: &PartitionIndex) -> Result<()> {
        let mus = enumerate_parts(k, self.group.p())?;
        if mus.len() != self.reps.len() {
            return Err(Error::Internal(format!(
                "{} superclasses but {} labels for {}",
                self.reps.len(),
                mus.len(),
                self.group
            )));
        }
        for mu in mus {
            let key = self.group.rep_key(&mu)?;
            let c = self.class_of[&key];
            if self.labels[c].is_some() {
                return Err(Error::Internal(format!("two u_μ in one superclass of {}", self.group)));
            }
            self.reps[c] = key;
            self.labels[c] = Some(mu);
        }
        Ok(())
    }

    pub fn group(&self) -> &PatternGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Key] {
        &self.reps
    }

    pub fn label(&self, c: usize) -> Option<&SuperclassLabel> {
        self.labels[c].as_ref()
    }

    pub fn members(&self, c: usize) -> &[Key] {
        &self.members[c]
    }

    pub fn size(&self, c: usize) -> u64 {
        self.members[c].len() as u64
    }

    pub fn order(&self) -> u64 {
        self.class_of.len() as u64
    }

    /// Class of `g` given as `g - 1`.
    pub fn class_of(&self, key: &[u8]) -> Option<usize> {
        self.class_of.get(key).copied()
    }

    /// Class containing `u_μ`.
    pub fn class_of_label(&self, mu: &LabeledSetPartition) -> Result<usize> {
        let key = self.group.rep_key(mu)?;
        self.class_of(&key)
            .ok_or_else(|| Error::Domain(format!("{mu} is not an element of {}", self.group)))
    }

    pub fn identity_class(&self) -> usize {
        self.class_of[&vec![0u8; self.reps[0].len()]]
    }

    pub fn to_json(&self) -> serde_json::Value {
        let repr = TableRepr {
            format_version: TABLE_FORMAT_VERSION,
            n: self.group.n(),
            p: self.group.p(),
            mask: self.group.mask().to_vec(),
            classes: (0..self.len())
                .map(|c| ClassRepr {
                    rep: self.reps[c].clone(),
                    label: self.labels[c].as_ref().map(|l| l.to_string()),
                    size: self.size(c),
                })
                .collect(),
        };
        serde_json::to_value(repr).expect("table serializes")
    }

    /// Reads a cached table; the orbits are recomputed and must agree.
    pub fn from_json(v: &serde_json::Value, budget: &Budget) -> Result<Self> {
        let repr: TableRepr = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if repr.format_version != TABLE_FORMAT_VERSION {
            return domain(format!("table format {} is stale", repr.format_version));
        }
        let group = PatternGroup::new(repr.n, repr.p, repr.mask)?;
        let table = Self::build(&group, budget)?;
        let same = table.len() == repr.classes.len()
            && repr.classes.iter().zip(0..).all(|(c, i)| {
                c.rep == table.reps[i] && c.size == table.size(i) && c.label == table.labels[i].as_ref().map(|l| l.to_string())
            });
        if !same {
            return Err(Error::Parse("cached superclass table disagrees with recomputation".into()));
        }
        Ok(table)
    }
}

/// `K` when the mask is exactly that of a parabolic subgroup.
fn parabolic_index(group: &PatternGroup) -> Option<PartitionIndex> {
    let n = group.n();
    let mut owner: Vec<u32> = (0..=n).collect();
    for &(i, j) in group.mask() {
        let (a, b) = (owner[i as usize], owner[j as usize]);
        let m = a.min(b);
        for o in owner.iter_mut() {
            if *o == a || *o == b {
                *o = m;
            }
        }
    }
    let mut parts: Vec<Vec<u32>> = Vec::new();
    let mut index: HashMap<u32, usize> = HashMap::new();
    for v in 1..=n {
        let o = owner[v as usize];
        let idx = *index.entry(o).or_insert_with(|| {
            parts.push(Vec::new());
            parts.len() - 1
        });
        parts[idx].push(v);
    }
    let k = PartitionIndex::new(n, parts).ok()?;
    let expect = PatternGroup::parabolic(&k, group.p()).ok()?;
    (expect.mask() == group.mask()).then_some(k)
}

#[derive(Serialize, Deserialize)]
struct ClassRepr {
    rep: Key,
    label: Option<String>,
    size: u64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    format_version: u32,
    n: u32,
    p: u32,
    mask: Vec<(u32, u32)>,
    classes: Vec<ClassRepr>,
}
