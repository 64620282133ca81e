//! Named groups and the JSON group description format.
//!
//! Catalog names: `C<m>` (cyclic), `S<m>` (symmetric), `A<m>` (alternating),
//! `D<2m>` (dihedral of order `2m`) and `Q8`. An underscore between letter
//! and number is accepted (`C_3`).

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, GroupError};
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown group name `{0}`")]
    UnknownName(String),
    #[error("invalid group description: {0}")]
    InvalidJson(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    Cyclic,
    Symmetric,
    Alternating,
    Dihedral,
    Quaternion,
}

fn split_name(name: &str) -> Option<(Family, usize)> {
    let mut chars = name.chars();
    let family = match chars.next()? {
        'C' => Family::Cyclic,
        'S' => Family::Symmetric,
        'A' => Family::Alternating,
        'D' => Family::Dihedral,
        'Q' => Family::Quaternion,
        _ => return None,
    };
    let rest = chars.as_str();
    let digits = rest.strip_prefix('_').unwrap_or(rest);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    let m: usize = digits.parse().ok()?;
    let valid = match family {
        Family::Dihedral => m.is_multiple_of(2),
        Family::Quaternion => m == 8,
        _ => true,
    };
    valid.then_some((family, m))
}

/// The canonical spelling of a catalog name, or `None` if it is not one.
pub fn canonical_name(name: &str) -> Option<String> {
    let (family, m) = split_name(name)?;
    let letter = match family {
        Family::Cyclic => 'C',
        Family::Symmetric => 'S',
        Family::Alternating => 'A',
        Family::Dihedral => 'D',
        Family::Quaternion => 'Q',
    };
    Some(format!("{letter}{m}"))
}

/// Order of a catalog group without building it.
pub fn catalog_order(name: &str) -> Option<u128> {
    let (family, m) = split_name(name)?;
    let m = m as u128;
    Some(match family {
        Family::Cyclic | Family::Dihedral => m,
        Family::Quaternion => 8,
        Family::Symmetric => (1..=m).product(),
        Family::Alternating if m <= 2 => 1,
        Family::Alternating => (1..=m).product::<u128>() / 2,
    })
}

pub fn resolve_name(name: &str, limits: &Limits) -> Result<FiniteGroup, CatalogError> {
    let (family, m) = split_name(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    // refuse early rather than closing a huge permutation group
    match catalog_order(name) {
        Some(order) if order <= limits.order_cap as u128 => {}
        _ => {
            return Err(GroupError::OrderCapExceeded {
                cap: limits.order_cap,
            }
            .into())
        }
    }
    let label = canonical_name(name).expect("validated above");
    let group = match family {
        Family::Cyclic => FiniteGroup::cyclic(m),
        Family::Symmetric => symmetric(m, limits)?,
        Family::Alternating => alternating(m, limits)?,
        Family::Dihedral => dihedral(m / 2)?,
        Family::Quaternion => quaternion()?,
    };
    Ok(group.with_label(label))
}

fn symmetric(m: usize, limits: &Limits) -> Result<FiniteGroup, GroupError> {
    let mut gens = Vec::new();
    if m >= 2 {
        let mut swap: Vec<usize> = (0..m).collect();
        swap.swap(0, 1);
        gens.push(swap);
        gens.push((0..m).map(|i| (i + 1) % m).collect());
    }
    FiniteGroup::from_permutations(m, &gens, limits)
}

fn alternating(m: usize, limits: &Limits) -> Result<FiniteGroup, GroupError> {
    let gens: Vec<Vec<usize>> = (2..m)
        .map(|k| {
            let mut p: Vec<usize> = (0..m).collect();
            // 3-cycle 0 -> 1 -> k -> 0
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    FiniteGroup::from_permutations(m.max(1), &gens, limits)
}

/// Dihedral group of order `2m`; `r^a s^b` sits at index `a + m*b`.
fn dihedral(m: usize) -> Result<FiniteGroup, GroupError> {
    let n = 2 * m;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            let (a, b) = (x % m, x / m);
            (0..n)
                .map(|y| {
                    let (c, d) = (y % m, y / m);
                    let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                    rot + m * ((b + d) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&table)
}

/// Quaternion group; index `4*sign + unit` with units `1, i, j, k`.
fn quaternion() -> Result<FiniteGroup, GroupError> {
    // (sign, unit) of unit_a * unit_b
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = UNITS[x % 4][y % 4];
                    4 * ((s + x / 4 + y / 4) % 2) + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(&table)
}

/// Every catalog group of order at most `max_order`, with its name.
///
/// Small coincidences (`S2 = C2`, `D6 = S3`, ...) are listed under each name.
pub fn catalog_groups_up_to(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let limits = Limits::default();
    let mut names: Vec<String> = Vec::new();
    names.extend((1..=max_order).map(|m| format!("C{m}")));
    names.extend((1..).map(|m| format!("S{m}")).take_while(|n| catalog_order(n).unwrap() <= max_order as u128));
    names.extend((3..).map(|m| format!("A{m}")).take_while(|n| catalog_order(n).unwrap() <= max_order as u128));
    names.extend((1..=max_order / 2).map(|m| format!("D{}", 2 * m)));
    if max_order >= 8 {
        names.push("Q8".into());
    }
    names
        .into_iter()
        .map(|n| {
            let g = resolve_name(&n, &limits).expect("catalog group builds");
            (n, g)
        })
        .collect()
}

/// The JSON form of a group: a catalog name, a table, or permutation
/// generators given as image lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDescription {
    Name(String),
    Table { table: Vec<Vec<usize>> },
    Perm { perm: PermDescription },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PermDescription {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupDescription {
    pub fn from_json(text: &str) -> Result<GroupDescription, CatalogError> {
        serde_json::from_str(text).map_err(|e| CatalogError::InvalidJson(e.to_string()))
    }

    pub fn resolve(&self, limits: &Limits) -> Result<FiniteGroup, CatalogError> {
        match self {
            GroupDescription::Name(name) => resolve_name(name, limits),
            GroupDescription::Table { table } => {
                if table.len() > limits.order_cap {
                    return Err(GroupError::OrderCapExceeded {
                        cap: limits.order_cap,
                    }
                    .into());
                }
                Ok(FiniteGroup::from_table(table)?)
            }
            GroupDescription::Perm { perm } => Ok(FiniteGroup::from_permutations(
                perm.degree,
                &perm.generators,
                limits,
            )?),
        }
    }

    /// Describes a group by name when it carries a catalog label, otherwise
    /// by its table.
    pub fn of(group: &FiniteGroup) -> GroupDescription {
        match group.label().and_then(canonical_name) {
            Some(name) => GroupDescription::Name(name),
            None => GroupDescription::Table {
                table: group.table(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn get(name: &str) -> FiniteGroup {
        resolve_name(name, &Limits::default()).unwrap()
    }

    #[test]
    fn orders_and_class_counts() {
        // (name, order, class count)
        let cases = [
            ("C1", 1, 1),
            ("C_5", 5, 5),
            ("S3", 6, 3),
            ("S4", 24, 5),
            ("A4", 12, 4),
            ("A5", 60, 5),
            ("D8", 8, 5),
            ("D10", 10, 4),
            ("D2", 2, 2),
            ("Q8", 8, 5),
            ("A2", 1, 1),
        ];
        for (name, order, k) in cases {
            let g = get(name);
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.conjugacy_classes().len(), k, "{name}");
        }
    }

    #[test]
    fn d8_and_q8_differ() {
        let d8 = get("D8");
        let q8 = get("Q8");
        let involutions = |g: &FiniteGroup| (1..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&d8), 5);
        assert_eq!(involutions(&q8), 1);
    }

    #[test]
    fn bad_names() {
        for name in ["X3", "D7", "Q16", "C0", "C", "C03", "C3a"] {
            assert!(matches!(
                resolve_name(name, &Limits::default()),
                Err(CatalogError::UnknownName(_))
            ));
        }
        assert!(matches!(
            resolve_name("S9", &Limits::default()),
            Err(CatalogError::Group(GroupError::OrderCapExceeded { .. }))
        ));
    }

    #[test]
    fn json_variants() {
        let d = GroupDescription::from_json(r#"{"perm": {"degree": 3, "generators": [[1,0,2],[1,2,0]]}}"#).unwrap();
        assert_eq!(d.resolve(&Limits::default()).unwrap().order(), 6);
        let d = GroupDescription::from_json(r#"{"table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(d.resolve(&Limits::default()).unwrap().order(), 2);
        let d = GroupDescription::from_json(r#""Q8""#).unwrap();
        assert_eq!(d.resolve(&Limits::default()).unwrap().order(), 8);
        assert!(GroupDescription::from_json(r#"{"tabel": []}"#).is_err());
    }

    #[test]
    fn catalog_listing() {
        let groups = catalog_groups_up_to(60);
        assert!(groups.iter().all(|(_, g)| g.order() <= 60));
        for name in ["S3", "S4", "D8", "Q8", "A4", "A5", "C60"] {
            assert!(groups.iter().any(|(n, _)| n == name), "{name}");
        }
    }
}
