use alloc::collections::BTreeSet;
use alloc::format;

use crate::Symbol;

/// Generates `base!k` spellings (smallest free `k ≥ 1`) that avoid every
/// symbol it was seeded with and every symbol it has handed out.
#[derive(Clone, Debug, Default)]
pub struct FreshNames {
    used: BTreeSet<Symbol>,
}

impl FreshNames {
    pub fn new(used: impl IntoIterator<Item = Symbol>) -> Self {
        FreshNames {
            used: used.into_iter().collect(),
        }
    }

    pub fn fresh(&mut self, base: &str) -> Symbol {
        (1..)
            .map(|k| Symbol::from(format!("{base}!{k}")))
            .find(|s| !self.used.contains(s))
            .inspect(|s| {
                self.used.insert(s.clone());
            })
            .expect("unbounded counter")
    }

    /// `preferred` when free, otherwise `preferred!k`.
    pub fn fresh_or(&mut self, preferred: &str) -> Symbol {
        if self.used.contains(preferred) {
            self.fresh(preferred)
        } else {
            let s = Symbol::new(preferred);
            self.used.insert(s.clone());
            s
        }
    }
}
