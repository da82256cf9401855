//! Superclass functions on explicit tables: supercharacters from their
//! definition as orbit sums, restriction, superinduction, pairings.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{domain, Error, Result};
use crate::qcoeff::Cyclotomic;
use crate::ring::CharCombo;
use crate::setpart::{LabeledSetPartition, PartitionIndex};

use super::classes::{orbit, SuperclassTable};
use super::group::{Budget, Key, PatternGroup};

/// Values of a superclass function, one per class of its table.
pub type ClassFunction = Vec<Cyclotomic>;

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The supercharacter with functional `lam` (a key supported on the mask):
/// `|Gλ| / |GλG| · Σ_{μ ∈ GλG} ϑ(μ(g-1))`, at each class representative.
pub fn supercharacter(table: &SuperclassTable, lam: &Key) -> Result<ClassFunction> {
    supercharacter_at(table, lam, table.reps())
}

/// The same orbit sum evaluated at arbitrary elements `g - 1`.
pub fn supercharacter_at(table: &SuperclassTable, lam: &Key, at: &[Key]) -> Result<ClassFunction> {
    let g = table.group();
    if lam.len() != table.reps()[0].len() || !g.supports(lam) {
        return domain(format!("functional is not supported on {g}"));
    }
    let gens = g.mask().to_vec();
    let left = |x: &Key| gens.iter().map(|&(i, j)| g.functional_left(x, i, j)).collect::<Vec<_>>();
    let both = |x: &Key| {
        gens.iter()
            .flat_map(|&(i, j)| [g.functional_left(x, i, j), g.functional_right(x, i, j)])
            .collect::<Vec<_>>()
    };
    let one_sided = orbit(lam, &left).len() as u64;
    let two_sided = orbit(lam, &both);
    let scale = ratio(one_sided, two_sided.len() as u64);
    let p = g.p();
    Ok(at
        .iter()
        .map(|x| {
            let mut counts = vec![0i64; p as usize];
            for mu in &two_sided {
                counts[g.pair(mu, x) as usize] += 1;
            }
            Cyclotomic::from_power_counts(p, &counts).scale(&scale)
        })
        .collect())
}

/// `χ^λ` of `U_K` from the definition, for `λ` fitting the table's group.
pub fn supercharacter_of(table: &SuperclassTable, lambda: &LabeledSetPartition) -> Result<ClassFunction> {
    supercharacter(table, &table.group().rep_key(lambda)?)
}

/// Values of a ring combination on a labeled table (`U_K` with matching `K`).
pub fn combo_values(table: &SuperclassTable, x: &CharCombo) -> Result<ClassFunction> {
    (0..table.len())
        .map(|c| {
            let mu = table
                .label(c)
                .ok_or_else(|| Error::Domain("table has no superclass labels".into()))?;
            x.value_at(mu)
        })
        .collect()
}

/// Superclass indicator of class `c`.
pub fn indicator(table: &SuperclassTable, c: usize) -> ClassFunction {
    let p = table.group().p();
    (0..table.len())
        .map(|d| if d == c { Cyclotomic::one(p) } else { Cyclotomic::zero(p) })
        .collect()
}

pub fn trivial(table: &SuperclassTable) -> ClassFunction {
    vec![Cyclotomic::one(table.group().p()); table.len()]
}

/// `|G| / |G(u_μ - 1)G|`.
pub fn z_value(table: &SuperclassTable, c: usize) -> BigRational {
    ratio(table.order(), table.size(c))
}

/// `z_μ` in `U_n(p)`.
pub fn z_value_of(mu: &LabeledSetPartition, n: u32, p: u32, budget: &Budget) -> Result<BigRational> {
    let t = SuperclassTable::build(&PatternGroup::full(n, p)?, budget)?;
    Ok(z_value(&t, t.class_of_label(mu)?))
}

/// `(1/|G|) Σ_g χ(g) conj(ψ(g))`.
pub fn brute_inner_product(table: &SuperclassTable, chi: &ClassFunction, psi: &ClassFunction) -> Result<Cyclotomic> {
    if chi.len() != table.len() || psi.len() != table.len() {
        return domain("value vectors do not match the table");
    }
    let p = table.group().p();
    let mut acc = Cyclotomic::zero(p);
    for c in 0..table.len() {
        acc += &(&chi[c] * &psi[c].conj()).scale(&ratio(table.size(c), 1));
    }
    Ok(acc.scale(&ratio(1, table.order())))
}

pub fn pointwise_product(x: &ClassFunction, y: &ClassFunction) -> ClassFunction {
    x.iter().zip(y).map(|(a, b)| a * b).collect()
}

fn check_pair(h: &SuperclassTable, g: &SuperclassTable) -> Result<()> {
    if !h.group().is_subgroup_of(g.group()) {
        return domain(format!("{} is not a pattern subgroup of {}", h.group(), g.group()));
    }
    Ok(())
}

/// `Res^G_H`.
pub fn brute_restrict(chi: &ClassFunction, g: &SuperclassTable, h: &SuperclassTable) -> Result<ClassFunction> {
    check_pair(h, g)?;
    h.reps()
        .iter()
        .map(|x| {
            let c = g.class_of(x).ok_or_else(|| Error::Internal("subgroup element missing".into()))?;
            Ok(chi[c].clone())
        })
        .collect()
}

/// `SInd_H^G(χ)(g) = (1/(|G||H|)) Σ_{x,y ∈ G, x(g-1)y+1 ∈ H} χ(x(g-1)y+1)`,
/// summed once per element of the two-sided orbit of `g - 1` (each is hit
/// `|G|^2 / |orbit|` times).
pub fn brute_superinduce(chi: &ClassFunction, h: &SuperclassTable, g: &SuperclassTable) -> Result<ClassFunction> {
    check_pair(h, g)?;
    let p = g.group().p();
    let base = ratio(g.order(), h.order());
    Ok((0..g.len())
        .map(|c| {
            let mut acc = Cyclotomic::zero(p);
            for y in g.members(c) {
                if let Some(d) = h.class_of(y) {
                    acc += &chi[d];
                }
            }
            acc.scale(&(&base / ratio(g.size(c), 1)))
        })
        .collect())
}

/// The defining double sum over `G × G`, literally. Refused above
/// `budget.literal_work` for `|G|^3`.
pub fn brute_superinduce_literal(chi: &ClassFunction, h: &SuperclassTable, g: &SuperclassTable, budget: &Budget) -> Result<ClassFunction> {
    check_pair(h, g)?;
    let order = g.order() as u128;
    let work = order.saturating_pow(3);
    if work > budget.literal_work {
        return Err(Error::Budget {
            what: format!("literal superinduction to {}", g.group()),
            required: work,
            limit: budget.literal_work,
        });
    }
    let grp = g.group();
    let elems: Vec<&Key> = (0..g.len()).flat_map(|c| g.members(c)).collect();
    let p = grp.p();
    let denom = ratio(1, g.order() * h.order());
    Ok(g.reps()
        .iter()
        .map(|x| {
            let mut acc = Cyclotomic::zero(p);
            for a in &elems {
                for b in &elems {
                    let y = grp.sandwich(a, x, b);
                    if let Some(d) = h.class_of(&y) {
                        acc += &chi[d];
                    }
                }
            }
            acc.scale(&denom)
        })
        .collect())
}

/// `z_μ κ_μ` on a labeled table.
pub fn z_kappa(table: &SuperclassTable, mu: &LabeledSetPartition) -> Result<ClassFunction> {
    let c = table.class_of_label(mu)?;
    let z = z_value(table, c);
    Ok(indicator(table, c).into_iter().map(|v| v.scale(&z)).collect())
}

/// Tables for `U_n` and `U_K`.
pub fn tables_for(k: &PartitionIndex, p: u32, budget: &Budget) -> Result<(SuperclassTable, SuperclassTable)> {
    let g = SuperclassTable::build(&PatternGroup::full(k.n(), p)?, budget)?;
    let h = SuperclassTable::build(&PatternGroup::parabolic(k, p)?, budget)?;
    Ok((g, h))
}
