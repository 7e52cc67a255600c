//! Acceptance gate. Runs each criterion, prints one PASS/FAIL line per
//! criterion, and exits non-zero if any fails.
//!
//! The oracles here work on raw image vectors and share no code with the
//! library beyond the functions under test.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use restricted_range::counting::{
    binomial, idempotent_count, order, order_stratum, regular_count, stirling2,
    stirling2_alternating_sum,
};
use restricted_range::relations::{self, Oracle, RelationKind};
use restricted_range::structure;
use restricted_range::{Transformation, Universe};

type Map = Vec<usize>;

/// Right action: x(ab) = (xa)b.
fn then(a: &Map, b: &Map) -> Map {
    a.iter().map(|&x| b[x]).collect()
}

fn all_maps(n: usize) -> Vec<Map> {
    let mut out = Vec::with_capacity(n.pow(n as u32));
    let mut cur = vec![0; n];
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}

fn triples(max_n: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for n in 1..=max_n {
        for m in 1..=n {
            for k in 1..=m {
                v.push((n, m, k));
            }
        }
    }
    v
}

/// Members of T(X,Y,Z) found by filtering all of T(X).
fn members(n: usize, m: usize, k: usize) -> Vec<Map> {
    all_maps(n)
        .into_iter()
        .filter(|a| a[..m].iter().all(|&y| y < k))
        .collect()
}

fn brute_regular(s: &[Map], a: &Map) -> bool {
    s.iter().any(|b| then(&then(a, b), a) == *a)
}

fn is_idem(a: &Map) -> bool {
    then(a, a) == *a
}

fn uni(n: usize, m: usize, k: usize) -> Universe {
    Universe::new(n, m, k).unwrap()
}

fn tr(a: &Map) -> Transformation {
    Transformation::new(a.clone()).unwrap()
}

/// S with an identity adjoined when it has none.
fn monoid(n: usize, s: &[Map]) -> Vec<Map> {
    let mut s1 = s.to_vec();
    let id: Map = (0..n).collect();
    if !s1.contains(&id) {
        s1.push(id);
    }
    s1
}

/// Kernel of x ↦ product(x) on S¹, as first-occurrence labels.
fn signature<F: Fn(&Map) -> Map>(s1: &[Map], product: F) -> Vec<usize> {
    let mut seen: HashMap<Map, usize> = HashMap::new();
    s1.iter()
        .map(|x| {
            let next = seen.len();
            *seen.entry(product(x)).or_insert(next)
        })
        .collect()
}

/// a L* b iff ax = ay ⟺ bx = by for all x, y in S¹.
fn left_signatures(n: usize, s: &[Map]) -> Vec<Vec<usize>> {
    let s1 = monoid(n, s);
    s.iter().map(|a| signature(&s1, |x| then(a, x))).collect()
}

/// a R* b iff xa = ya ⟺ xb = yb for all x, y in S¹.
fn right_signatures(n: usize, s: &[Map]) -> Vec<Vec<usize>> {
    let s1 = monoid(n, s);
    s.iter().map(|a| signature(&s1, |x| then(x, a))).collect()
}

/// Classes as index lists, grouped by equal signature.
fn classes(sigs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut slot: HashMap<&Vec<usize>, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, sig) in sigs.iter().enumerate() {
        let j = *slot.entry(sig).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[j].push(i);
    }
    out
}

fn every_class_has_idempotent(s: &[Map], cls: &[Vec<usize>]) -> bool {
    cls.iter().all(|c| c.iter().any(|&i| is_idem(&s[i])))
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed <= budget, || {
        format!("took {elapsed:.2?}, budget {budget:?}")
    })
}

fn counting_exactness() -> Check {
    let start = Instant::now();
    let mut cells = 0;
    for (n, m, k) in triples(5) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        let reg = s.iter().filter(|a| brute_regular(&s, a)).count();
        let idem = s.iter().filter(|a| is_idem(a)).count();
        ensure(order(&u) == big(s.len()), || {
            format!("{u} order {} != {}", order(&u), s.len())
        })?;
        ensure(regular_count(&u) == big(reg), || {
            format!("{u} regular {} != {reg}", regular_count(&u))
        })?;
        ensure(idempotent_count(&u) == big(idem), || {
            format!("{u} idempotent {} != {idem}", idempotent_count(&u))
        })?;
        cells += 3;
    }
    for ((n, m, k), want) in [((3, 2, 1), (3u32, 2u32, 2u32)), ((4, 3, 2), (32, 16, 10))] {
        let u = uni(n, m, k);
        let got = (order(&u), regular_count(&u), idempotent_count(&u));
        ensure(got == (want.0.into(), want.1.into(), want.2.into()), || {
            format!("{u} golden {got:?}")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{cells} cells over n<=5 plus 2 golden triples, {:.2?}",
        start.elapsed()
    ))
}

fn stratification() -> Check {
    let mut cells = 0;
    for (n, m, k) in triples(5) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        let mut sum = BigUint::from(0u32);
        for r in 1..=k {
            let brute = s
                .iter()
                .filter(|a| {
                    let mut img: Vec<usize> = a[..m].to_vec();
                    img.sort_unstable();
                    img.dedup();
                    img.len() == r
                })
                .count();
            let got = order_stratum(&u, r).map_err(|e| e.to_string())?;
            ensure(got == big(brute), || format!("{u} r={r}: {got} != {brute}"))?;
            sum += got;
            cells += 1;
        }
        ensure(sum == order(&u), || {
            format!("{u} strata sum {sum} != order")
        })?;
        ensure(
            order_stratum(&u, 0).is_err() && order_stratum(&u, k + 1).is_err(),
            || format!("{u} accepts an out-of-range stratum"),
        )?;
    }
    Ok(format!("{cells} strata over n<=5"))
}

fn stirling_identities() -> Check {
    let start = Instant::now();
    let fact = |r: usize| (1..=r).fold(BigUint::from(1u32), |acc, i| acc * i);
    for m in 1..=12usize {
        for k in 1..=m {
            let lhs: BigUint = (1..=k)
                .map(|r| binomial(k, r as i64) * fact(r) * stirling2(m, r))
                .sum();
            ensure(lhs == num_traits::pow(big(k), m), || format!("k={k} m={m}"))?;
        }
    }
    for n in 0..=20 {
        for r in 0..=n {
            ensure(stirling2(n, r) == stirling2_alternating_sum(n, r), || {
                format!("S({n},{r})")
            })?;
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "78 identity cells, 231 Stirling cells, {:.2?}",
        start.elapsed()
    ))
}

fn relation_characterizations() -> Check {
    let start = Instant::now();
    let mut pairs = 0usize;
    for (n, m, k) in triples(4) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        let ts: Vec<Transformation> = s.iter().map(tr).collect();
        let lsig = left_signatures(n, &s);
        let rsig = right_signatures(n, &s);
        let lib_oracle = Oracle::new(&u).map_err(|e| e.to_string())?;
        let lib_l: Vec<_> = ts
            .iter()
            .map(|a| lib_oracle.signature(RelationKind::LStar, a))
            .collect();
        let lib_r: Vec<_> = ts
            .iter()
            .map(|a| lib_oracle.signature(RelationKind::RStar, a))
            .collect();
        // Pairwise oracle calls rebuild S¹ each time; keep them to small universes.
        let pairwise = s.len() <= 32;
        for i in 0..s.len() {
            for j in 0..s.len() {
                let (a, b) = (&ts[i], &ts[j]);
                let want_l = lsig[i] == lsig[j];
                let want_r = rsig[i] == rsig[j];
                let got_l = relations::lstar_related(&u, a, b).map_err(|e| e.to_string())?;
                let got_r = relations::rstar_related(&u, a, b).map_err(|e| e.to_string())?;
                ensure(got_l == want_l, || {
                    format!("{u} L* {a} {b}: {got_l} != {want_l}")
                })?;
                ensure(got_r == want_r, || {
                    format!("{u} R* {a} {b}: {got_r} != {want_r}")
                })?;
                ensure((lib_l[i] == lib_l[j]) == want_l, || {
                    format!("{u} L* oracle {a} {b}")
                })?;
                ensure((lib_r[i] == lib_r[j]) == want_r, || {
                    format!("{u} R* oracle {a} {b}")
                })?;
                if pairwise {
                    ensure(relations::lstar_oracle(&u, a, b).unwrap() == want_l, || {
                        format!("{u} lstar_oracle {a} {b}")
                    })?;
                    ensure(relations::rstar_oracle(&u, a, b).unwrap() == want_r, || {
                        format!("{u} rstar_oracle {a} {b}")
                    })?;
                }
                pairs += 1;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{pairs} ordered pairs over n<=4, {:.2?}",
        start.elapsed()
    ))
}

fn regularity() -> Check {
    let mut elements = 0;
    for (n, m, k) in triples(4) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        let mut all_regular = true;
        for a in &s {
            let t = tr(a);
            let brute = brute_regular(&s, a);
            all_regular &= brute;
            let got = structure::is_regular_element(&u, &t).map_err(|e| e.to_string())?;
            ensure(got == brute, || {
                format!("{u} {t}: regular {got} != {brute}")
            })?;
            if brute {
                let b = structure::quasi_inverse(&u, &t).map_err(|e| e.to_string())?;
                let bm = b.images().to_vec();
                ensure(s.contains(&bm), || {
                    format!("{u} quasi-inverse {b} of {t} not a member")
                })?;
                ensure(then(&then(a, &bm), a) == *a, || {
                    format!("{u} quasi-inverse {b} of {t} fails")
                })?;
            } else {
                ensure(structure::quasi_inverse(&u, &t).is_err(), || {
                    format!("{u} {t}: quasi-inverse of non-regular")
                })?;
            }
            elements += 1;
        }
        let got = structure::is_regular_semigroup(&u);
        ensure(got == all_regular, || {
            format!("{u} regular semigroup {got} != {all_regular}")
        })?;
    }
    Ok(format!("{elements} elements over n<=4"))
}

fn abundance() -> Check {
    let mut checked = 0;
    for (n, m, k) in triples(4) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        let left = every_class_has_idempotent(&s, &classes(&left_signatures(n, &s)));
        let right = every_class_has_idempotent(&s, &classes(&right_signatures(n, &s)));
        let table = relations::abundance_table(&u);
        ensure((table.left, table.right) == (left, right), || {
            format!(
                "{u} table ({},{}) != empirical ({left},{right})",
                table.left, table.right
            )
        })?;
        let emp = relations::abundance(&u, true).map_err(|e| e.to_string())?;
        ensure((emp.left, emp.right) == (left, right), || {
            format!("{u} library empirical verdict differs")
        })?;
        checked += 1;
    }
    let v = relations::abundance(&uni(3, 2, 1), true).map_err(|e| e.to_string())?;
    ensure(!v.left && v.right, || format!("(3,2,1) verdict {v}"))?;
    let witness = v.left_witness.clone().unwrap_or_default();
    ensure(witness == vec![tr(&vec![0, 0, 1])], || {
        format!("(3,2,1) left witness {witness:?}")
    })?;
    let v = relations::abundance(&uni(4, 3, 2), false).map_err(|e| e.to_string())?;
    ensure(v.to_string() == "left: false, right: false", || {
        format!("(4,3,2) verdict {v}")
    })?;
    Ok(format!(
        "{checked} universes over n<=4, golden (3,2,1) and (4,3,2)"
    ))
}

fn witnesses() -> Check {
    let (mut nonregular, mut rstar) = (0, 0);
    for (n, m, k) in triples(4) {
        let u = uni(n, m, k);
        let s = members(n, m, k);
        if !s.iter().all(|a| brute_regular(&s, a)) {
            let w = structure::nonregular_witness(&u).map_err(|e| e.to_string())?;
            ensure(s.contains(&w.images().to_vec()), || {
                format!("{u} witness {w} not a member")
            })?;
            ensure(!structure::is_regular_element(&u, &w).unwrap(), || {
                format!("{u} witness {w} accepted")
            })?;
            ensure(!brute_regular(&s, &w.images().to_vec()), || {
                format!("{u} witness {w} is regular")
            })?;
            nonregular += 1;
        }
        if k < m && m < n && k >= 2 {
            let w = relations::idempotent_free_rstar_element(&u).map_err(|e| e.to_string())?;
            let wm = w.images().to_vec();
            ensure(
                wm[..k].iter().all(|&x| x == 0) && wm[k..m].iter().all(|&x| x == 1),
                || format!("{u} R* witness {w} has the wrong shape"),
            )?;
            let sigs = right_signatures(n, &s);
            let idx = s
                .iter()
                .position(|a| *a == wm)
                .ok_or_else(|| format!("{u} {w} not a member"))?;
            let free = s
                .iter()
                .zip(&sigs)
                .filter(|(_, g)| **g == sigs[idx])
                .all(|(a, _)| !is_idem(a));
            ensure(free, || {
                format!("{u} R*-class of {w} contains an idempotent")
            })?;
            rstar += 1;
        }
    }
    Ok(format!(
        "{nonregular} non-regular universes, {rstar} PROPER k>=2 universes"
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_restricted-range"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).trim_end().to_string(),
    )
}

fn cli_contract() -> Check {
    let cases: &[(&[&str], Option<&str>, i32)] = &[
        (
            &[
                "count", "--n", "3", "--m", "2", "--k", "1", "--what", "order",
            ],
            Some("3"),
            0,
        ),
        (
            &[
                "count",
                "--n",
                "4",
                "--m",
                "3",
                "--k",
                "2",
                "--what",
                "idempotent",
            ],
            Some("10"),
            0,
        ),
        (
            &[
                "count", "--n", "2", "--m", "2", "--k", "2", "--what", "order",
            ],
            Some("4"),
            0,
        ),
        (
            &[
                "check",
                "--n",
                "3",
                "--m",
                "2",
                "--k",
                "1",
                "--map",
                "0,0,1",
                "--property",
                "regular",
            ],
            Some("false"),
            1,
        ),
        (
            &[
                "check",
                "--n",
                "3",
                "--m",
                "2",
                "--k",
                "1",
                "--map",
                "0,0,2",
                "--property",
                "idempotent",
            ],
            Some("true"),
            0,
        ),
        (
            &[
                "check",
                "--n",
                "3",
                "--m",
                "2",
                "--k",
                "1",
                "--map",
                "0,1,0",
                "--property",
                "member",
            ],
            Some("false"),
            1,
        ),
        (
            &[
                "related",
                "--n",
                "3",
                "--m",
                "2",
                "--k",
                "1",
                "--a",
                "0,0,1",
                "--b",
                "0,0,2",
                "--relation",
                "rstar",
            ],
            Some("true"),
            0,
        ),
        (
            &["abundance", "--n", "4", "--m", "3", "--k", "2"],
            Some("left: false, right: false"),
            0,
        ),
        (
            &[
                "count", "--n", "2", "--m", "3", "--k", "1", "--what", "order",
            ],
            None,
            2,
        ),
        (
            &[
                "check",
                "--n",
                "3",
                "--m",
                "2",
                "--k",
                "1",
                "--map",
                "0,x,0",
                "--property",
                "member",
            ],
            None,
            2,
        ),
        (&["verify", "--suite", "all", "--max-n", "4"], None, 0),
    ];
    for (args, want_out, want_code) in cases {
        let (code, out) = cli(args);
        ensure(code == *want_code, || {
            format!("`{}` exited {code}, want {want_code}", args.join(" "))
        })?;
        if let Some(w) = want_out {
            ensure(out == *w, || {
                format!("`{}` printed {out:?}, want {w:?}", args.join(" "))
            })?;
        }
    }
    Ok(format!("{} invocations", cases.len()))
}

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        ("1 counting exactness", counting_exactness),
        ("2 stratification", stratification),
        ("3 Stirling identities", stirling_identities),
        ("4 relation characterizations", relation_characterizations),
        ("5 regularity", regularity),
        ("6 abundance", abundance),
        ("7 witness constructions", witnesses),
        ("8 CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
