//! Naive reference implementations, written without the library's lattice
//! types so they can serve as an independent check.

#![allow(dead_code)]

pub type Xy = (f64, f64);

pub fn char_delta(c: char) -> (i32, i32) {
    match c {
        'R' => (1, 0),
        'U' => (0, 1),
        'L' => (-1, 0),
        'D' => (0, -1),
        _ => panic!("bad direction {c}"),
    }
}

/// Origin followed by running sums of the walk.
pub fn naive_points(walk: &str) -> Vec<(i32, i32)> {
    let mut pts = vec![(0, 0)];
    let (mut x, mut y) = (0, 0);
    for c in walk.chars() {
        let (dx, dy) = char_delta(c);
        x += dx;
        y += dy;
        pts.push((x, y));
    }
    pts
}

pub fn naive_self_avoiding(pts: &[(i32, i32)]) -> bool {
    for i in 0..pts.len() {
        for j in 0..i {
            if pts[i] == pts[j] {
                return false;
            }
        }
    }
    true
}

fn dist(a: (i32, i32), b: (i32, i32)) -> f64 {
    (((a.0 - b.0) * (a.0 - b.0) + (a.1 - b.1) * (a.1 - b.1)) as f64).sqrt()
}

pub fn oracle_consecutive(pts: &[(i32, i32)], bits: &[bool]) -> f64 {
    let mut sum = 0.0;
    for i in 0..pts.len() {
        if !bits[i] {
            continue;
        }
        // next hydrophobic index after i
        for j in i + 1..pts.len() {
            if bits[j] {
                sum += dist(pts[i], pts[j]);
                break;
            }
        }
    }
    sum
}

pub fn oracle_all_pairs(pts: &[(i32, i32)], bits: &[bool]) -> f64 {
    let mut sum = 0.0;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            if i < j && bits[i] && bits[j] {
                sum += dist(pts[i], pts[j]);
            }
        }
    }
    sum
}

pub fn oracle_masked(pts: &[(i32, i32)], bits: &[bool]) -> f64 {
    let a: Vec<(i32, i32)> = pts
        .iter()
        .zip(bits)
        .map(|(&p, &b)| (p.0 * b as i32, p.1 * b as i32))
        .collect();
    let mut sum = 0.0;
    for x in 0..a.len() - 1 {
        sum += dist(a[x], a[x + 1]);
    }
    sum
}

pub fn oracle_contact(pts: &[(i32, i32)], bits: &[bool]) -> f64 {
    let mut count = 0;
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            let non_bonded = j > i + 1;
            let touching = (pts[i].0 - pts[j].0).abs() + (pts[i].1 - pts[j].1).abs() == 1;
            if non_bonded && touching && bits[i] && bits[j] {
                count += 1;
            }
        }
    }
    -(count as f64)
}

/// Every walk of `n` steps as a direction string, self-avoiding or not.
pub fn all_walks(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| "RULD".chars().map(move |c| format!("{w}{c}")))
            .collect();
    }
    out
}

pub fn all_saws(n: usize) -> Vec<String> {
    all_walks(n)
        .into_iter()
        .filter(|w| naive_self_avoiding(&naive_points(w)))
        .collect()
}

pub fn all_profiles(len: usize) -> Vec<Vec<bool>> {
    (0..1u32 << len)
        .map(|m| (0..len).map(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Unreduced brute-force minimum over every self-avoiding walk.
pub fn brute_force_min(bits: &[bool], variant: &str) -> f64 {
    all_saws(bits.len() - 1)
        .iter()
        .map(|w| oracle_by_name(&naive_points(w), bits, variant))
        .fold(f64::INFINITY, f64::min)
}

pub fn oracle_by_name(pts: &[(i32, i32)], bits: &[bool], variant: &str) -> f64 {
    match variant {
        "consecutive_h" => oracle_consecutive(pts, bits),
        "all_pairs_h" => oracle_all_pairs(pts, bits),
        "masked_adjacent" => oracle_masked(pts, bits),
        "hp_contact" => oracle_contact(pts, bits),
        _ => panic!("unknown variant {variant}"),
    }
}
