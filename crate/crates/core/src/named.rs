//! Standard quivers addressable by name.
//!
//! * `A<n>`: the path `1 -> 2 -> ... -> n` with arrows `a1 .. a<n-1>`;
//! * `L<n>`: one vertex `v` with loops `a1 .. a<n>`;
//! * `C<n>`: the equioriented cycle on `1 .. n`;
//! * `cycle:<signs>`: a cycle on `1 .. n` where `a<k>` joins `k` and `k+1`
//!   (mod n) and points forwards for `+`, backwards for `-`.
//!   `cycle:++-` is the acyclic Ã_3 with `a1: 1->2`, `a2: 2->3`, `a3: 1->3`.

use crate::error::{Error, Result};
use crate::quiver::Quiver;

pub fn path(n: usize) -> Quiver {
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (1..n)
        .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
        .collect();
    Quiver::new(vs, arrows).expect("path quiver is valid")
}

pub fn loops(n: usize) -> Quiver {
    let arrows: Vec<(String, String, String)> = (1..=n)
        .map(|i| (format!("a{i}"), "v".to_string(), "v".to_string()))
        .collect();
    Quiver::new(["v".to_string()], arrows).expect("loop quiver is valid")
}

/// Cycle with `forward[k-1]` giving the orientation of `a<k>`.
pub fn cycle(forward: &[bool]) -> Quiver {
    let n = forward.len();
    let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = forward
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let a = (k + 1).to_string();
            let b = ((k + 1) % n + 1).to_string();
            let (s, t) = if f { (a, b) } else { (b, a) };
            (format!("a{}", k + 1), s, t)
        })
        .collect();
    Quiver::new(vs, arrows).expect("cycle quiver is valid")
}

/// Resolves one of the names described in the module documentation.
pub fn by_name(name: &str) -> Result<Quiver> {
    let bad = || Error::MalformedInput(format!("unknown quiver name `{name}`"));
    if let Some(signs) = name.strip_prefix("cycle:") {
        let forward: Option<Vec<bool>> = signs
            .chars()
            .map(|c| match c {
                '+' => Some(true),
                '-' => Some(false),
                _ => None,
            })
            .collect();
        let forward = forward.filter(|f| !f.is_empty()).ok_or_else(bad)?;
        return Ok(cycle(&forward));
    }
    let (kind, num) = name.split_at(1.min(name.len()));
    let n: usize = num.parse().map_err(|_| bad())?;
    match kind {
        "A" if n >= 1 => Ok(path(n)),
        "L" => Ok(loops(n)),
        "C" if n >= 1 => Ok(cycle(&vec![true; n])),
        _ => Err(bad()),
    }
}
