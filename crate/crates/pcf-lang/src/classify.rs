//! Sublanguage classification by the types at which `Y` occurs.

use crate::term::{Kind, Term};
use crate::types::Sublevel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SublanguageTag {
    pub max_y_level: Option<usize>,
    pub max_y_sublevel: Option<Sublevel>,
    pub uses_oracles: bool,
}

impl SublanguageTag {
    /// Membership in PCF_k.
    pub fn in_pcf_k(&self, k: usize) -> bool {
        self.max_y_level.map_or(true, |l| l <= k)
    }

    /// Membership in PCF_{k,l}.
    pub fn in_pcf_kl(&self, k: usize, l: usize) -> bool {
        self.max_y_sublevel.map_or(true, |s| s <= Sublevel { level: k, width: l })
    }
}

pub fn classify(term: &Term) -> SublanguageTag {
    let mut tag = SublanguageTag { max_y_level: None, max_y_sublevel: None, uses_oracles: false };
    walk(term, &mut tag);
    tag
}

fn walk(t: &Term, tag: &mut SublanguageTag) {
    match t.kind() {
        Kind::Y(s) => {
            tag.max_y_level = Some(tag.max_y_level.map_or(s.level(), |l| l.max(s.level())));
            let sl = s.sublevel();
            tag.max_y_sublevel = Some(tag.max_y_sublevel.map_or(sl, |m| m.max(sl)));
        }
        Kind::Oracle(_) => tag.uses_oracles = true,
        Kind::Lam(_, _, b) => walk(b, tag),
        Kind::App(f, a) => {
            walk(f, tag);
            walk(a, tag);
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::phi;
    use crate::parse::parse_pcf;

    #[test]
    fn y_free_has_no_level() {
        let tag = classify(&parse_pcf("suc 1").unwrap());
        assert_eq!(tag.max_y_level, None);
        assert!(tag.in_pcf_k(0));
    }

    #[test]
    fn bottom_is_level_zero() {
        assert_eq!(classify(&parse_pcf("Y[N] (\\x:N. x)").unwrap()).max_y_level, Some(0));
    }

    #[test]
    fn phi_level() {
        for k in 0..3 {
            assert_eq!(classify(&phi(k)).max_y_level, Some(k + 1));
        }
    }

    #[test]
    fn sublevel_of_binary() {
        let tag = classify(&parse_pcf("Y[N->N->N]").unwrap());
        assert_eq!(tag.max_y_sublevel, Some(Sublevel { level: 1, width: 2 }));
        assert!(!tag.in_pcf_kl(1, 1));
        assert!(tag.in_pcf_kl(1, 2));
    }
}
