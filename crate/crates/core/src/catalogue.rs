//! Bundled weighted Dynkin diagrams of rigid nilpotent orbits.
//!
//! Labels follow Bourbaki numbering of the simple roots (for G2, α1 is
//! short). Tilded Bala–Carter names may be written `~A1`, `A1~` or `Ã1`.

use crate::rootsystem::LieType;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrbitEntry {
    pub lie_type: LieType,
    pub rank: usize,
    pub name: &'static str,
    pub labels: &'static [i64],
    /// dim g^e, used to validate the entry.
    pub centralizer_dim: usize,
    /// Number of 1-dimensional representations of U(g,e).
    pub onedim_count: usize,
    pub extended_runtime: bool,
}

const fn entry(
    lie_type: LieType,
    rank: usize,
    name: &'static str,
    labels: &'static [i64],
    centralizer_dim: usize,
    onedim_count: usize,
    extended_runtime: bool,
) -> OrbitEntry {
    OrbitEntry {
        lie_type,
        rank,
        name,
        labels,
        centralizer_dim,
        onedim_count,
        extended_runtime,
    }
}

pub const CATALOGUE: &[OrbitEntry] = &[
    entry(LieType::G, 2, "A1", &[0, 1], 8, 1, false),
    entry(LieType::G, 2, "~A1", &[1, 0], 6, 2, false),
    entry(LieType::F, 4, "A1", &[1, 0, 0, 0], 36, 1, false),
    entry(LieType::F, 4, "~A1", &[0, 0, 0, 1], 30, 1, false),
    entry(LieType::F, 4, "A1+~A1", &[0, 1, 0, 0], 24, 1, false),
    entry(LieType::F, 4, "A2+~A1", &[0, 0, 1, 0], 18, 1, false),
    entry(LieType::F, 4, "~A2+A1", &[0, 1, 0, 1], 16, 2, false),
    entry(LieType::E, 6, "A1", &[0, 1, 0, 0, 0, 0], 56, 1, true),
    entry(LieType::E, 6, "3A1", &[0, 0, 0, 1, 0, 0], 38, 1, true),
    entry(LieType::E, 6, "2A2+A1", &[1, 0, 0, 1, 0, 1], 24, 1, true),
    entry(LieType::E, 7, "A1", &[1, 0, 0, 0, 0, 0, 0], 99, 1, true),
    entry(LieType::E, 7, "2A1", &[0, 0, 0, 0, 0, 1, 0], 81, 1, true),
    entry(LieType::E, 7, "(3A1)'", &[0, 0, 1, 0, 0, 0, 0], 69, 1, true),
    entry(LieType::E, 7, "4A1", &[0, 1, 0, 0, 0, 0, 1], 63, 1, true),
    entry(LieType::E, 7, "A2+2A1", &[0, 0, 0, 1, 0, 0, 0], 51, 1, true),
    entry(LieType::E, 7, "2A2+A1", &[0, 0, 1, 0, 0, 1, 0], 43, 1, true),
    entry(LieType::E, 7, "(A3+A1)'", &[1, 0, 0, 1, 0, 0, 0], 41, 2, true),
];

/// Canonical spelling: tildes in front, no spaces.
pub fn normalize_name(name: &str) -> String {
    let s: String = name
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .replace(['Ã', 'ã'], "~A");
    s.split('+')
        .map(|part| match part.strip_suffix('~') {
            Some(core) if !core.starts_with('~') => {
                // "A1~" or "2A1~" → "~A1" / "2~A1"
                let split = core.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(0);
                format!("{}~{}", &core[..split], &core[split..])
            }
            _ => part.to_string(),
        })
        .collect::<Vec<_>>()
        .join("+")
}

pub fn lookup(lie_type: LieType, rank: usize, name: &str) -> Option<&'static OrbitEntry> {
    let want = normalize_name(name);
    CATALOGUE
        .iter()
        .find(|e| e.lie_type == lie_type && e.rank == rank && e.name.eq_ignore_ascii_case(&want))
}

pub fn entries_for(lie_type: LieType, rank: usize) -> impl Iterator<Item = &'static OrbitEntry> {
    CATALOGUE
        .iter()
        .filter(move |e| e.lie_type == lie_type && e.rank == rank)
}

/// Name of the catalogued orbit with these labels, if any.
pub fn name_of(lie_type: LieType, rank: usize, labels: &[i64]) -> Option<&'static str> {
    entries_for(lie_type, rank).find(|e| e.labels == labels).map(|e| e.name)
}

/// Sign changes e_α ↦ ±e_α (indexed like the positive roots) giving the
/// reference Chevalley basis in which bundled golden data is expressed.
pub fn reference_signs(lie_type: LieType, rank: usize) -> Option<&'static [i8]> {
    match (lie_type, rank) {
        (LieType::G, 2) => Some(&[-1, 1, 1, 1, 1, -1]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_normalize() {
        assert_eq!(normalize_name("A1~"), "~A1");
        assert_eq!(normalize_name("Ã2 + A1"), "~A2+A1");
        assert_eq!(normalize_name("A2+A1~"), "A2+~A1");
        assert_eq!(lookup(LieType::G, 2, "Ã1").unwrap().labels, &[1, 0]);
        assert_eq!(lookup(LieType::F, 4, "a1+~a1").unwrap().labels, &[0, 1, 0, 0]);
        assert!(lookup(LieType::F, 4, "B3").is_none());
    }

    #[test]
    fn sign_dictionary_length_matches_positive_roots() {
        assert_eq!(reference_signs(LieType::G, 2).unwrap().len(), 6);
    }
}
