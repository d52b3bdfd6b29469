use std::collections::{BTreeMap, HashMap};

use super::tensor::Cell;
use crate::chain::{DegreeWindow, GradedSpace};
use crate::error::{Error, Result};

/// Desuspension prefix on labels.
pub const DESUSP: &str = "s⁻¹";

/// `s⁻¹V`: the same basis one degree lower, labels prefixed by `s⁻¹`.
pub fn desuspend(v: &GradedSpace) -> GradedSpace {
    let w = v.window();
    let window = DegreeWindow::new(w.lo - 1, w.hi - 1).expect("shifted window");
    let basis: BTreeMap<i64, Vec<String>> =
        v.basis().iter().map(|(d, ls)| (d - 1, ls.iter().map(|l| format!("{DESUSP}{l}")).collect())).collect();
    GradedSpace::new(v.field(), window, basis).expect("desuspension of a valid space")
}

/// All words in the letters of `letters` (every letter in degree >= 1) of total
/// degree at most `max_degree`, ordered by length and then lexicographically.
pub fn words_up_to(letters: &GradedSpace, max_degree: i64) -> Result<Vec<Vec<Cell>>> {
    if let Some(m) = letters.min_degree() {
        if m <= 0 {
            return Err(Error::NonConnected(format!("generator in degree {m}")));
        }
    }
    let cells = letters.elements();
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(i64, Vec<Cell>)> = vec![(0, Vec::new())];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (deg, w) in &frontier {
            for &c in &cells {
                if deg + c.0 <= max_degree {
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push((deg + c.0, w2));
                }
            }
        }
        out.extend(next.iter().map(|(_, w)| w.clone()));
        frontier = next;
    }
    Ok(out)
}

pub fn word_degree(w: &[Cell]) -> i64 {
    w.iter().map(|c| c.0).sum()
}

/// Label of a word: letters joined by `|`, the empty word is `1`.
pub fn word_label(letters: &GradedSpace, w: &[Cell]) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter().map(|&(d, i)| letters.label(d, i)).collect::<Vec<_>>().join("|")
    }
}

/// The truncated tensor algebra `T(V)` as a graded space with a word basis.
#[derive(Clone, Debug)]
pub struct WordSpace {
    pub letters: GradedSpace,
    space: GradedSpace,
    words: BTreeMap<i64, Vec<Vec<Cell>>>,
    index: HashMap<Vec<Cell>, Cell>,
}

impl WordSpace {
    pub fn new(letters: &GradedSpace, window: DegreeWindow) -> Result<WordSpace> {
        let all = words_up_to(letters, window.hi)?;
        let mut words: BTreeMap<i64, Vec<Vec<Cell>>> = BTreeMap::new();
        for w in all {
            let d = word_degree(&w);
            if window.contains(d) {
                words.entry(d).or_default().push(w);
            }
        }
        let mut basis = BTreeMap::new();
        let mut index = HashMap::new();
        for (d, ws) in &words {
            basis.insert(*d, ws.iter().map(|w| word_label(letters, w)).collect());
            for (i, w) in ws.iter().enumerate() {
                index.insert(w.clone(), (*d, i));
            }
        }
        let space = GradedSpace::new(letters.field(), window, basis)?;
        Ok(WordSpace { letters: letters.clone(), space, words, index })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn word(&self, n: i64, i: usize) -> &[Cell] {
        &self.words[&n][i]
    }

    pub fn index(&self, w: &[Cell]) -> Option<Cell> {
        self.index.get(w).copied()
    }
}

/// `T(V)` truncated to `w`; requires `V` in degrees >= 1.
pub fn tensor_algebra_trunc(v: &GradedSpace, w: DegreeWindow) -> Result<WordSpace> {
    WordSpace::new(v, w)
}
