//! End-to-end acceptance run: golden tables, exception sets, engine against
//! closed forms, randomized ring laws, Clifford data and the cross-check
//! between exclusions and known compact quotients.
//!
//! Every criterion prints one PASS/FAIL line; the test fails if any does.

use std::collections::BTreeSet;
use std::time::Instant;

use cliffklein::catalog::{known_existence, tests_for, Recipe};
use cliffklein::clifford::{clifford_algebra, k_sphere_row, KGroup};
use cliffklein::jorders::ProjectiveKind;
use cliffklein::kring::{CpClass, RpClass};
use cliffklein::obstruct::evaluate_form;
use cliffklein::{
    check, hpq_admissible_table, j_cp, j_hp, j_rp, s_sphere, scan_exceptions, FamilyId, SpaceSpec,
};
use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type JFn = fn(u64) -> cliffklein::Result<cliffklein::JOrder>;
type Criterion = (&'static str, fn() -> Check);

fn big(s: &str) -> BigUint {
    s.parse().unwrap()
}

fn ac1_j_tables() -> Check {
    let rp = [
        2u64, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128, 128, 128, 128, 256,
    ];
    let cp = [
        "2",
        "24",
        "24",
        "2880",
        "2880",
        "362880",
        "362880",
        "29030400",
        "29030400",
        "958003200",
        "958003200",
    ];
    let hp = ["24", "1440", "362880", "14515200", "958003200"];
    for (i, want) in rp.iter().enumerate() {
        let n = i as u64 + 1;
        let got = j_rp(n).map_err(|e| e.to_string())?;
        if got.value() != &BigUint::from(*want) {
            return Err(format!("j_RP({n}) = {}, expected {want}", got.value()));
        }
    }
    for (kind, table, f) in [("CP", &cp[..], j_cp as JFn), ("HP", &hp[..], j_hp as JFn)] {
        for (i, want) in table.iter().enumerate() {
            let n = i as u64 + 1;
            let got = f(n).map_err(|e| e.to_string())?;
            if got.value() != &big(want) {
                return Err(format!("j_{kind}({n}) = {}, expected {want}", got.value()));
            }
        }
    }
    Ok("32 values".into())
}

fn ac2_s_table() -> Check {
    let want = [24u64, 240, 504, 480, 264, 65520, 24, 16320, 28728];
    for (i, w) in want.iter().enumerate() {
        let n = 4 * (i as u64 + 1);
        let got = s_sphere(n).map_err(|e| e.to_string())?;
        if got != BigUint::from(*w) {
            return Err(format!("s_{n} = {got}, expected {w}"));
        }
    }
    Ok("9 values".into())
}

fn ac3_hpq_table() -> Check {
    let want = [
        2u64, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128, 128, 128, 128, 256,
    ];
    let rows = hpq_admissible_table(ProjectiveKind::Rp, 16).map_err(|e| e.to_string())?;
    if rows.len() != 16 {
        return Err(format!("{} rows", rows.len()));
    }
    for (row, w) in rows.iter().zip(want) {
        if row.divisor != BigUint::from(w) {
            return Err(format!("q = {}: {} | p, expected {w}", row.q, row.divisor));
        }
    }
    Ok("q = 1..16".into())
}

fn pairs(ps: &[(u64, u64)]) -> BTreeSet<(u64, u64)> {
    ps.iter().copied().collect()
}

fn ac4_exception_sets() -> Check {
    let start = Instant::now();
    let expected: [(FamilyId, &[(u64, u64)]); 13] = [
        (FamilyId::OtherSym1, &[(1, 1), (3, 1), (7, 1)]),
        (FamilyId::OtherSym2, &[(1, 1), (3, 1)]),
        (FamilyId::OtherSym3, &[(3, 1)]),
        (FamilyId::OtherSym4, &[]),
        (FamilyId::OtherSym5, &[]),
        (FamilyId::OtherSym6, &[]),
        (FamilyId::NonSym1, &[(3, 1), (7, 1)]),
        (FamilyId::NonSym2, &[(3, 1), (7, 1)]),
        (FamilyId::NonSym3, &[]),
        (FamilyId::NonSym4, &[(3, 1)]),
        (FamilyId::NonSym5, &[(1, 1)]),
        (FamilyId::NonSym6, &[]),
        (FamilyId::NonSym7, &[]),
    ];
    for (family, want) in expected {
        let got: BTreeSet<(u64, u64)> = scan_exceptions(family, 100, 100)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|s| (s.p, s.q.unwrap_or(1)))
            .collect();
        let want = pairs(want);
        if got != want {
            return Err(format!("{family}: got {got:?}, expected {want:?}"));
        }
    }
    let spheres: Vec<u64> = scan_exceptions(FamilyId::ComplexSphere, 100, 1)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|s| s.p)
        .collect();
    if spheres != [1, 3, 7] {
        return Err(format!("complex spheres: {spheres:?}"));
    }
    let elapsed = start.elapsed();
    Ok(format!("13 families + complex spheres in {:.2?}", elapsed))
}

/// Signed linear coefficient each test should produce, written out per
/// family. `None` for range rules.
fn closed_forms(spec: &SpaceSpec) -> Vec<Option<i64>> {
    let p = spec.p as i64;
    let q = spec.q.unwrap_or(0) as i64;
    match spec.family {
        FamilyId::OtherSym1 => vec![Some(p - q + 2)],
        FamilyId::OtherSym2 => vec![Some(p - q + 1)],
        FamilyId::OtherSym3 if (p, q) == (1, 1) => vec![Some(1), Some(2)],
        FamilyId::OtherSym3 => vec![Some(p - q + 1)],
        FamilyId::OtherSym4 if p == 2 => vec![Some(6)],
        FamilyId::OtherSym4 | FamilyId::OtherSym5 | FamilyId::OtherSym6 => vec![None],
        FamilyId::NonSym1 | FamilyId::NonSym2 => vec![Some(p + 1), Some(-(p - 1))],
        FamilyId::NonSym3 => vec![Some(p + 1)],
        FamilyId::NonSym4 => vec![Some(p), Some(-(p - 1))],
        FamilyId::NonSym5 => vec![Some(p + 1), Some(-p)],
        FamilyId::NonSym6 => vec![Some(p + 1)],
        FamilyId::NonSym7 => vec![Some(2 * p + 1)],
        FamilyId::GrassIndefR
        | FamilyId::GrassIndefC
        | FamilyId::GrassIndefH
        | FamilyId::HpqR
        | FamilyId::HpqC
        | FamilyId::HpqH => vec![Some(p)],
        FamilyId::ComplexSphere => vec![Some(p + 1), Some(-(p - 1))],
    }
}

fn ac5_closed_forms() -> Check {
    let mut compared = 0u64;
    for family in FamilyId::ALL {
        let mut specs = Vec::new();
        for p in 1..=100 {
            match family {
                FamilyId::ComplexSphere | FamilyId::OtherSym4 => {
                    specs.push(SpaceSpec::single(family, p))
                }
                FamilyId::GrassIndefR | FamilyId::GrassIndefC | FamilyId::GrassIndefH => {
                    for q in [1, 2, 5, 17, 100] {
                        specs.extend([1, 3, 64].map(|q2| SpaceSpec::grass(family, p, q, q2)));
                    }
                }
                _ => specs.extend((1..=100).map(|q| SpaceSpec::pq(family, p, q))),
            }
        }
        for spec in specs.into_iter().filter(|s| s.validate().is_ok()) {
            let tests = tests_for(&spec).map_err(|e| e.to_string())?;
            let want = closed_forms(&spec);
            if tests.len() != want.len() {
                return Err(format!(
                    "{spec}: {} tests, expected {}",
                    tests.len(),
                    want.len()
                ));
            }
            for (test, w) in tests.iter().zip(want) {
                match (&test.recipe, w) {
                    (Recipe::RangeRule { .. }, None) => {}
                    (_, Some(m)) => {
                        let form = evaluate_form(test).map_err(|e| format!("{spec}: {e}"))?;
                        if form.linear != BigInt::from(m) {
                            return Err(format!("{spec}: m = {}, expected {m}", form.linear));
                        }
                        compared += 1;
                    }
                    _ => return Err(format!("{spec}: unexpected recipe")),
                }
            }
        }
    }
    Ok(format!("{compared} coefficients, zero mismatches"))
}

const CASES: usize = 10_000;

fn rand_vec(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-bound..=bound)).collect()
}

/// Truncated convolution on machine integers.
fn naive_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= n {
                out[i + j] += *x as i128 * *y as i128;
            }
        }
    }
    out
}

fn as_i128(x: &CpClass) -> Vec<i128> {
    x.coeffs()
        .iter()
        .map(|c| i128::try_from(c).unwrap())
        .collect()
}

fn cp(n: usize, v: &[i64]) -> CpClass {
    CpClass::new(n, v.iter().copied())
}

fn ac6_ring_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a11c);
    let mut failures = Vec::new();
    let mut fail = |what: &str, detail: String| {
        if failures.len() < 5 {
            failures.push(format!("{what}: {detail}"));
        }
    };

    for _ in 0..CASES {
        let v = rand_vec(&mut rng, 6, 1000);
        let (a, b, c) = (
            RpClass::new(v[0], v[1]),
            RpClass::new(v[2], v[3]),
            RpClass::new(v[4], v[5]),
        );
        // t^2 = -2t, expanded by hand
        let prod = RpClass::new(
            v[0] as i128 * v[2] as i128,
            v[0] as i128 * v[3] as i128 + v[1] as i128 * v[2] as i128
                - 2 * v[1] as i128 * v[3] as i128,
        );
        let ok = &a * &b == prod
            && &a * &b == &b * &a
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(b.clone() + c.clone()) == &a * &b + &a * &c
            && &a * &RpClass::one() == a;
        if !ok {
            fail("rp ring axioms", format!("{a}, {b}, {c}"));
        }
    }

    for _ in 0..CASES {
        let n = rng.gen_range(1..=20usize);
        let (va, vb, vc) = (
            rand_vec(&mut rng, n + 1, 1000),
            rand_vec(&mut rng, n + 1, 1000),
            rand_vec(&mut rng, n + 1, 1000),
        );
        let (a, b, c) = (cp(n, &va), cp(n, &vb), cp(n, &vc));
        let ab = a.checked_mul(&b).unwrap();
        let ok = as_i128(&ab) == naive_mul(n, &va, &vb)
            && ab == b.checked_mul(&a).unwrap()
            && ab.checked_mul(&c).unwrap() == a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
            && a.checked_mul(&b.checked_add(&c).unwrap()).unwrap()
                == ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap()
            && a.checked_mul(&CpClass::one(n)).unwrap() == a;
        if !ok {
            fail("cp ring axioms", format!("n = {n}, {a}, {b}"));
        }
    }

    for _ in 0..CASES {
        let n = rng.gen_range(1..=12usize);
        let k = rng.gen_range(1..=5u32);
        let l = rng.gen_range(1..=5u32);
        let a = cp(n, &rand_vec(&mut rng, n + 1, 50));
        let b = cp(n, &rand_vec(&mut rng, n + 1, 50));
        let composed = a.psi(l).unwrap().psi(k).unwrap() == a.psi(k * l).unwrap();
        let multiplicative = a.checked_mul(&b).unwrap().psi(k).unwrap()
            == a.psi(k).unwrap().checked_mul(&b.psi(k).unwrap()).unwrap();
        let additive = a.checked_add(&b).unwrap().psi(k).unwrap()
            == a.psi(k).unwrap().checked_add(&b.psi(k).unwrap()).unwrap();
        if !(composed && multiplicative && additive) {
            fail(
                "Adams operations",
                format!("n = {n}, k = {k}, l = {l}, {a}"),
            );
        }
    }

    for _ in 0..CASES {
        let n = rng.gen_range(1..=20usize);
        let a = cp(n, &rand_vec(&mut rng, n + 1, 1000));
        let b = cp(n, &rand_vec(&mut rng, n + 1, 1000));
        let involution = a.conj().conj() == a;
        let ring_map =
            a.checked_mul(&b).unwrap().conj() == a.conj().checked_mul(&b.conj()).unwrap();
        if !(involution && ring_map) {
            fail("conjugation", format!("n = {n}, {a}"));
        }
    }

    for n in 1..=20usize {
        let line = CpClass::taut(n);
        if line.checked_mul(&line.conj()).unwrap() != CpClass::one(n) {
            fail("(1+u)(1+conj u) = 1", format!("n = {n}"));
        }
        if n >= 2 {
            let u = CpClass::u(n);
            let rhs = u
                .scale(&BigInt::from(2))
                .checked_add(&u.checked_mul(&u).unwrap())
                .unwrap();
            if u.psi(2).unwrap() != rhs {
                fail("psi^2(u) = 2u + u^2", format!("n = {n}"));
            }
        }
    }

    if failures.is_empty() {
        Ok(format!("4 × {CASES} randomized cases, 20 truncations"))
    } else {
        Err(failures.join("; "))
    }
}

fn ac7_clifford() -> Check {
    for n in 0..=64u64 {
        let a = clifford_algebra(n);
        if a.real_dimension() != BigUint::from(2u32).pow(n as u32) {
            return Err(format!("dim Cl_{n} = {}", a.real_dimension()));
        }
        let b = clifford_algebra(n + 8);
        if b.base_ring() != a.base_ring() || b.matrix_size != &a.matrix_size * 16u32 {
            return Err(format!("Cl_{} vs Cl_{n}", n + 8));
        }
    }
    for n in 1..=64u64 {
        let (a, b) = (k_sphere_row(n).unwrap(), k_sphere_row(n + 8).unwrap());
        if (a.ko, a.ku, a.ksp) != (b.ko, b.ku, b.ksp) {
            return Err(format!("K-groups of S^{n} and S^{} differ", n + 8));
        }
    }
    use KGroup::{Zero, Z, Z2};
    let spots = [
        (4, [Z, Z, Z]),
        (5, [Zero, Zero, Z2]),
        (6, [Zero, Z, Z2]),
        (9, [Z2, Zero, Zero]),
        (10, [Z2, Z, Zero]),
    ];
    for (n, [ko, ku, ksp]) in spots {
        let r = k_sphere_row(n).unwrap();
        if [r.ko.group, r.ku.group, r.ksp.group] != [ko, ku, ksp] {
            return Err(format!(
                "row S^{n}: {} {} {}",
                r.ko.group, r.ku.group, r.ksp.group
            ));
        }
    }
    Ok("n <= 64, rows 4, 5, 6, 9, 10".into())
}

fn ac8_existence_consistency() -> Check {
    let mut noted = 0u64;
    let mut specs = Vec::new();
    for p in 0..=100u64 {
        for q in 0..=100u64 {
            for f in [
                FamilyId::HpqR,
                FamilyId::HpqC,
                FamilyId::HpqH,
                FamilyId::OtherSym1,
                FamilyId::OtherSym2,
                FamilyId::OtherSym3,
                FamilyId::OtherSym5,
                FamilyId::OtherSym6,
                FamilyId::NonSym1,
                FamilyId::NonSym2,
            ] {
                specs.push(SpaceSpec::pq(f, p, q));
            }
            for q2 in [1, 2, 3] {
                specs.push(SpaceSpec::grass(FamilyId::GrassIndefR, p, q, q2));
                specs.push(SpaceSpec::grass(FamilyId::GrassIndefC, p, q, q2));
            }
        }
        specs.push(SpaceSpec::single(FamilyId::ComplexSphere, p));
        specs.push(SpaceSpec::single(FamilyId::OtherSym4, p));
    }
    for spec in specs {
        if known_existence(&spec).is_none() || spec.validate().is_err() {
            continue;
        }
        noted += 1;
        match check(&spec) {
            Ok(v) if !v.excluded => {}
            Ok(_) => return Err(format!("{spec} has a known quotient but is excluded")),
            Err(e) => return Err(format!("{spec}: {e}")),
        }
    }
    Ok(format!("{noted} noted in-domain parameters, none excluded"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("AC1 j-order tables", ac1_j_tables),
        ("AC2 s_n table", ac2_s_table),
        ("AC3 H^{p,q} admissibility", ac3_hpq_table),
        ("AC4 exception sets", ac4_exception_sets),
        ("AC5 engine vs closed forms", ac5_closed_forms),
        ("AC6 ring properties", ac6_ring_suite),
        ("AC7 Clifford suite", ac7_clifford),
        ("AC8 existence consistency", ac8_existence_consistency),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                println!("FAIL {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
