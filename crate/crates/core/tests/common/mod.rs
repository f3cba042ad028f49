//! Fixtures, random generators and brute-force oracles shared by the
//! integration tests. None of the oracles call into the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use expert_core::centrality::FeatureVector;
use expert_core::corpus::{AcademicStatus, Profile, ProfileSource};
use expert_core::graph::{EdgeWeights, SocialGraph};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn corpus_dir() -> PathBuf {
    fixtures().join("corpus")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Edit distance by plain recursion over suffixes, memoized.
pub fn levenshtein_oracle(a: &str, b: &str) -> usize {
    fn go(a: &[char], b: &[char], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        if a.is_empty() {
            return b.len();
        }
        if b.is_empty() {
            return a.len();
        }
        if let Some(&d) = memo.get(&(a.len(), b.len())) {
            return d;
        }
        let d = if a[0] == b[0] {
            go(&a[1..], &b[1..], memo)
        } else {
            1 + go(&a[1..], b, memo)
                .min(go(a, &b[1..], memo))
                .min(go(&a[1..], &b[1..], memo))
        };
        memo.insert((a.len(), b.len()), d);
        d
    }
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    go(&a, &b, &mut HashMap::new())
}

pub fn random_word(rng: &mut impl Rng, alphabet: &[char], max_len: usize) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect()
}

/// Random graph on `n` nodes named `n00..`, each pair joined with
/// probability `p` by 1–4 coauthorships and sometimes a profile link.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> SocialGraph {
    let mut g = SocialGraph::new(EdgeWeights::default());
    let ids: Vec<String> = (0..n).map(|i| format!("n{i:02}")).collect();
    for id in &ids {
        g.add_node(id);
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                for _ in 0..rng.random_range(1..=4) {
                    g.add_coauthorship(&ids[i], &ids[j]);
                }
                if rng.random_bool(0.3) {
                    g.add_profile_link(&ids[i], &ids[j]);
                }
            }
        }
    }
    g
}

pub fn graph_from(edges: &[(&str, &str)]) -> SocialGraph {
    let mut g = SocialGraph::new(EdgeWeights::default());
    for (a, b) in edges {
        g.add_coauthorship(a, b);
    }
    g
}

/// Dense weight matrix in sorted node order.
pub fn weight_matrix(g: &SocialGraph) -> (Vec<String>, Vec<Vec<f64>>) {
    let ids: Vec<String> = g.nodes().map(str::to_string).collect();
    let pos: HashMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut w = vec![vec![0.0; ids.len()]; ids.len()];
    for (a, b, d) in g.edges() {
        w[pos[a]][pos[b]] = d.weight;
        w[pos[b]][pos[a]] = d.weight;
    }
    (ids, w)
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            let (top, bottom) = a.split_at_mut(row);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= f * y;
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// PageRank as the solution of the linear system
/// `r = d (Pᵀ r + (Σ_dangling r)/n) + (1-d)/n`.
pub fn pagerank_oracle(g: &SocialGraph, d: f64) -> BTreeMap<String, f64> {
    let (ids, w) = weight_matrix(g);
    let n = ids.len();
    let strength: Vec<f64> = w.iter().map(|row| row.iter().sum()).collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        m[i][i] = 1.0;
        for j in 0..n {
            let p = if strength[j] == 0.0 {
                1.0 / n as f64
            } else {
                w[j][i] / strength[j]
            };
            m[i][j] -= d * p;
        }
    }
    let r = solve(m, vec![(1.0 - d) / n as f64; n]);
    let total: f64 = r.iter().sum();
    ids.into_iter()
        .zip(r.into_iter().map(|x| x / total))
        .collect()
}

const LEN_TOL: f64 = 1e-9;

/// Betweenness and harmonic closeness by enumerating every simple path.
/// Edge length is `1 / weight`; betweenness counts each unordered pair once.
pub fn path_oracle(g: &SocialGraph) -> (BTreeMap<String, f64>, BTreeMap<String, f64>) {
    let (ids, w) = weight_matrix(g);
    let n = ids.len();
    let mut between = vec![0.0; n];
    let mut close = vec![0.0; n];

    fn walk(
        w: &[Vec<f64>],
        path: &mut Vec<usize>,
        len: f64,
        target: usize,
        found: &mut Vec<(f64, Vec<usize>)>,
    ) {
        let at = *path.last().unwrap();
        if at == target {
            found.push((len, path.clone()));
            return;
        }
        for next in 0..w.len() {
            if w[at][next] > 0.0 && !path.contains(&next) {
                path.push(next);
                walk(w, path, len + 1.0 / w[at][next], target, found);
                path.pop();
            }
        }
    }

    for s in 0..n {
        for t in s + 1..n {
            let mut found = Vec::new();
            walk(&w, &mut vec![s], 0.0, t, &mut found);
            let Some(best) = found.iter().map(|(l, _)| *l).min_by(f64::total_cmp) else {
                continue;
            };
            close[s] += 1.0 / best;
            close[t] += 1.0 / best;
            let shortest: Vec<&Vec<usize>> = found
                .iter()
                .filter(|(l, _)| (l - best).abs() < LEN_TOL)
                .map(|(_, p)| p)
                .collect();
            for p in &shortest {
                for &v in &p[1..p.len() - 1] {
                    between[v] += 1.0 / shortest.len() as f64;
                }
            }
        }
    }
    (
        ids.iter().cloned().zip(between).collect(),
        ids.into_iter().zip(close).collect(),
    )
}

pub fn fv(person: &str, values: [f64; 6]) -> FeatureVector {
    FeatureVector {
        person_id: person.to_string(),
        category_id: "c".to_string(),
        pagerank: values[0],
        betweenness: values[1],
        closeness: values[2],
        journal_rank: values[3],
        reader_count: values[4] as u64,
        user_rank: values[5] as i64,
    }
}

/// The 14-row weather table from `fixtures/golf.csv`.
pub fn golf() -> Vec<(FeatureVector, bool)> {
    let text = std::fs::read_to_string(fixtures().join("golf.csv")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .enumerate()
        .map(|(i, line)| {
            let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            (
                fv(&format!("r{i:02}"), [v[2], 0.0, 0.0, v[0], v[1], v[3]]),
                v[4] == 1.0,
            )
        })
        .collect()
}

/// Binary entropy of a labelled count pair, computed directly.
pub fn h(p: f64, n: f64) -> f64 {
    let t = p + n;
    [p, n]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -(x / t) * (x / t).log2())
        .sum()
}

/// Best midpoint split of one column by exhaustive search, maximizing gain
/// (earliest threshold on ties): `(threshold, gain, gain_ratio)`.
pub fn split_oracle(values: &[f64], labels: &[bool]) -> Option<(f64, f64, f64)> {
    let mut distinct: Vec<f64> = values.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let pos = labels.iter().filter(|&&l| l).count() as f64;
    let all = labels.len() as f64;
    let base = h(pos, all - pos);
    let mut best: Option<(f64, f64, f64)> = None;
    for pair in distinct.windows(2) {
        let t = (pair[0] + pair[1]) / 2.0;
        let (mut lp, mut ln) = (0.0, 0.0);
        for (v, l) in values.iter().zip(labels) {
            if *v <= t {
                if *l {
                    lp += 1.0
                } else {
                    ln += 1.0
                }
            }
        }
        let (rp, rn) = (pos - lp, all - pos - ln);
        let gain = base - (lp + ln) / all * h(lp, ln) - (rp + rn) / all * h(rp, rn);
        let info = h(lp + ln, rp + rn);
        if best.is_none_or(|b| gain > b.1 + 1e-12) {
            best = Some((t, gain, gain / info));
        }
    }
    best
}

pub fn profile(id: &str, name: &str) -> Profile {
    Profile {
        profile_id: id.into(),
        display_name: name.into(),
        academic_status: AcademicStatus::Other,
        research_interests: vec![],
        source: ProfileSource::Mendeley,
    }
}

/// An author and a candidate list in which at least two candidates share
/// the minimum distance to the author. Returns that distance too.
pub fn planted_tie(r: &mut impl Rng, case: usize) -> (String, Vec<Profile>, usize) {
    let alphabet = ['a', 'b', 'c'];
    let author = random_word(r, &alphabet, 8);
    let mut names: Vec<String> = (0..r.random_range(1..6))
        .map(|_| random_word(r, &alphabet, 9))
        .collect();
    let best = names
        .iter()
        .map(|n| levenshtein_oracle(&author, n))
        .min()
        .unwrap();
    // prefer a distinct twin; fall back to a homonym
    let twin = (0..2000)
        .map(|_| random_word(r, &alphabet, author.chars().count() + best))
        .find(|w| levenshtein_oracle(&author, w) == best && !names.contains(w))
        .unwrap_or_else(|| {
            names
                .iter()
                .find(|w| levenshtein_oracle(&author, w) == best)
                .unwrap()
                .clone()
        });
    names.push(twin);
    let profiles = names
        .iter()
        .enumerate()
        .map(|(i, n)| profile(&format!("c{case}-{i}"), n))
        .collect();
    (author, profiles, best)
}

/// Rows labelled `reader_count > t` for a hidden integer `t`, with noise in
/// the other features and at least two rows of each class near `t`.
pub fn planted_threshold(r: &mut impl Rng) -> (f64, Vec<(FeatureVector, bool)>) {
    let n = r.random_range(20..=80);
    let t = r.random_range(10.0..500.0_f64).round();
    let mut data: Vec<(FeatureVector, bool)> = (0..n)
        .map(|i| {
            let readers = r.random_range(0..=600) as f64;
            let noise = [
                r.random::<f64>(),
                r.random::<f64>() * 10.0,
                r.random::<f64>() * 5.0,
                r.random::<f64>(),
            ];
            let f = fv(
                &format!("p{i:03}"),
                [noise[0], noise[1], noise[2], noise[3], readers, 0.0],
            );
            (f, readers > t)
        })
        .collect();
    for (name, delta) in [("lo1", -1.0), ("lo2", -2.0), ("hi1", 1.0), ("hi2", 2.0)] {
        data.push((fv(name, [0.5, 0.0, 0.0, 0.5, t + delta, 0.0]), delta > 0.0));
    }
    (t, data)
}
