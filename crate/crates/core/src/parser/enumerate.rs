use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::chart::{Cat, Chart, Position, Rules};
use super::ParseError;
use crate::Symbol;

impl Position for Vec<Symbol> {
    fn empty() -> Self {
        Vec::new()
    }

    fn is_empty(&self) -> bool {
        self.is_empty()
    }
}

/// Strings derivable from the start category with at most `max_len` tokens.
pub(crate) fn strings(rules: &Rules, max_len: usize, max_chain: usize, max_items: usize) -> Result<BTreeSet<Vec<Symbol>>, ParseError> {
    let mut chart: Chart<'_, Vec<Symbol>> = Chart::new(rules, max_chain, max_items, false, false);
    chart.close_empty()?;
    // items of each yield length, by category
    let mut by_len: Vec<BTreeMap<Cat, Vec<usize>>> = alloc::vec![BTreeMap::new(); max_len + 1];
    let file = |chart: &Chart<'_, Vec<Symbol>>, by_len: &mut Vec<BTreeMap<Cat, Vec<usize>>>, from: usize| {
        for ix in from..chart.items.len() {
            let item = &chart.items[ix];
            by_len[item.pos.len()].entry(item.cat).or_default().push(ix);
        }
    };
    file(&chart, &mut by_len, 0);
    let terminals: Vec<Symbol> = rules.normalized.grammar.terminals.iter().cloned().collect();
    for len in 1..=max_len {
        let mark = chart.items.len();
        let mut created = Vec::new();
        if len == 1 {
            for t in &terminals {
                chart.lexical_items(Some(t), &alloc::vec![t.clone()], &mut created)?;
            }
        }
        for (rule, b) in rules.binary.iter().enumerate() {
            for split in 1..len {
                let lefts = by_len[split].get(&b.left).cloned().unwrap_or_default();
                let rights = by_len[len - split].get(&b.right).cloned().unwrap_or_default();
                for &x in &lefts {
                    for &y in &rights {
                        let (tx, ty) = (chart.items[x].tree, chart.items[y].tree);
                        let Some(tree) = chart.binary_tree(rule, tx, ty) else {
                            continue;
                        };
                        let mut pos = chart.items[x].pos.clone();
                        pos.extend(chart.items[y].pos.iter().cloned());
                        if let Some(ix) = chart.add(b.lhs, pos, tree, 0, super::chart::Deriv::Bin(rule, x, y))? {
                            created.push(ix);
                        }
                    }
                }
            }
        }
        chart.close_with_empties(created)?;
        file(&chart, &mut by_len, mark);
    }
    Ok(chart
        .items
        .iter()
        .filter(|i| i.cat == rules.start)
        .map(|i| i.pos.clone())
        .collect())
}
