use std::collections::{HashMap, HashSet, VecDeque};

/// A permutation acting on sequences by `(w·ν)[k] = ν[w[k]]`.
pub type Perm = Vec<u8>;

pub(crate) fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn act<T: Clone>(w: &[u8], nu: &[T]) -> Vec<T> {
    w.iter().map(|&k| nu[k as usize].clone()).collect()
}

/// `s_{i₁}···s_{iₗ}` for the word `[i₁,…,iₗ]`.
pub fn perm_of_word(n: usize, word: &[u8]) -> Perm {
    let mut p = identity(n);
    for &c in word.iter().rev() {
        p.swap(c as usize, c as usize + 1);
    }
    p
}

pub fn perm_length(p: &[u8]) -> usize {
    (0..p.len()).map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count()).sum()
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    fn go(cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k as u8);
                go(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The lexicographically least reduced word: peel the smallest left descent.
pub fn lex_reduced_word(p: &[u8]) -> Vec<u8> {
    let mut p = p.to_vec();
    let mut word = Vec::new();
    while let Some(c) = (0..p.len().saturating_sub(1)).find(|&c| p[c] > p[c + 1]) {
        word.push(c as u8);
        p.swap(c, c + 1);
    }
    word
}

/// Positions of the commutation and braid moves available in `word`, with their results.
pub(crate) fn moves(word: &[u8]) -> Vec<(usize, Vec<u8>)> {
    let mut out = Vec::new();
    for k in 0..word.len().saturating_sub(1) {
        if word[k].abs_diff(word[k + 1]) > 1 {
            let mut w = word.to_vec();
            w.swap(k, k + 1);
            out.push((k, w));
        }
    }
    for k in 0..word.len().saturating_sub(2) {
        if word[k] == word[k + 2] && word[k].abs_diff(word[k + 1]) == 1 {
            let mut w = word.to_vec();
            w[k] = word[k + 1];
            w[k + 1] = word[k];
            w[k + 2] = word[k + 1];
            out.push((k, w));
        }
    }
    out
}

/// All reduced words of `p`, connected by moves to the lexicographic one.
pub fn reduced_words(p: &[u8]) -> Vec<Vec<u8>> {
    let start = lex_reduced_word(p);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for (_, next) in moves(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Move positions carrying `from` to `to`, by breadth-first search.
pub(crate) fn move_path(from: &[u8], to: &[u8]) -> Option<Vec<usize>> {
    if from == to {
        return Some(Vec::new());
    }
    let mut parent: HashMap<Vec<u8>, (Vec<u8>, usize)> = HashMap::new();
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for (k, next) in moves(&w) {
            if next.as_slice() == from || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), (w.clone(), k));
            if next.as_slice() == to {
                let mut path = Vec::new();
                let mut cur = next;
                while cur.as_slice() != from {
                    let (prev, k) = parent[&cur].clone();
                    path.push(k);
                    cur = prev;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(next);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_lengths() {
        assert_eq!(all_perms(4).len(), 24);
        let w0 = vec![2, 1, 0];
        assert_eq!(perm_length(&w0), 3);
        assert_eq!(lex_reduced_word(&w0), vec![0, 1, 0]);
        assert_eq!(reduced_words(&w0), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(reduced_words(&[3, 2, 1, 0]).len(), 16);
        for p in all_perms(4) {
            let w = lex_reduced_word(&p);
            assert_eq!(w.len(), perm_length(&p));
            assert_eq!(perm_of_word(4, &w), p);
            for r in reduced_words(&p) {
                assert_eq!(perm_of_word(4, &r), p);
                assert!(r >= w);
            }
        }
    }

    #[test]
    fn action_matches_simple_swaps() {
        let nu = vec![5, 6, 7];
        assert_eq!(act(&perm_of_word(3, &[0]), &nu), vec![6, 5, 7]);
        // τ₁τ₂ e(ν) = e(s₁s₂ν) τ₁τ₂
        assert_eq!(act(&perm_of_word(3, &[0, 1]), &nu), vec![7, 5, 6]);
    }

    #[test]
    fn paths_connect() {
        let a = vec![0, 1, 0, 2, 1, 0];
        for b in reduced_words(&perm_of_word(4, &a)) {
            let path = move_path(&a, &b).unwrap();
            let mut cur = a.clone();
            for k in path {
                cur = moves(&cur).into_iter().find(|(p, _)| *p == k).unwrap().1;
            }
            assert_eq!(cur, b);
        }
    }
}
