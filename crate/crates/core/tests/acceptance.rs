//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vtangle::diagram::{Chord, End, TangleDiagram, Visit};
use vtangle::invariants::{henrich_pt, vlk_matrix};
use vtangle::moves::random_walk;
use vtangle::ops::{connect, gen_vlk_braid, gen_vlk_link};
use vtangle::poly::{int, rat};
use vtangle::random::{random_knot, random_link, random_skeleton, random_string_link, random_tangle, scatter_chords};
use vtangle::singular::derivative;
use vtangle::{equal_diagrams, p_lk, p_lk_l, p_sc, parse, serialize, wriggle, Invariant, LaurentPoly, Rational};

type Outcome = Result<String, String>;

fn mono(c: Rational, exps: &[i64]) -> LaurentPoly {
    LaurentPoly::mono(c, exps, exps.len()).unwrap()
}

fn ab_grid() -> Vec<(Rational, Rational)> {
    vec![(int(1), int(1)), (int(1), int(2)), (int(1), int(-1)), (rat(2, 3), rat(-1, 5))]
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn clasp() -> TangleDiagram {
    parse(include_str!("../data/clasp.tangle")).unwrap()
}

fn two_strands(chords: Vec<Chord>, a: Vec<Visit>, b: Vec<Visit>) -> TangleDiagram {
    let mut d = vtangle::ops::identity_braid(2);
    d.chords = chords;
    d.components[0].visits = a;
    d.components[1].visits = b;
    d
}

fn v(chord: usize, end: End) -> Visit {
    Visit { chord, end }
}

fn c1_clasp() -> Outcome {
    let d = clasp();
    for (a, b) in ab_grid() {
        check(p_sc(&d).unwrap().is_zero(), || "p_sc nonzero".into())?;
        let lk = p_lk(&d, &a, &b).unwrap();
        check(lk == mono(&a + &b, &[1, 1]), || format!("p_lk = {lk} at ({a}, {b})"))?;
        let lkl = p_lk_l(&d, &a, &b).unwrap();
        let want = &mono(a.clone(), &[1, -1]) + &mono(b.clone(), &[-1, 1]);
        check(lkl == want, || format!("p_lkL = {lkl} at ({a}, {b})"))?;
    }
    Ok("4 (a,b) pairs".into())
}

fn c2_virtualized() -> Outcome {
    // keep only the top crossing (A over B) or only the bottom one (B over A)
    let top = two_strands(vec![Chord::classical("1", 1, End::A)], vec![v(0, End::A)], vec![v(0, End::B)]);
    let bottom = two_strands(vec![Chord::classical("2", 1, End::B)], vec![v(0, End::A)], vec![v(0, End::B)]);
    for (a, b) in ab_grid() {
        let pt = p_lk(&top, &a, &b).unwrap();
        let pb = p_lk(&bottom, &a, &b).unwrap();
        check(pt == mono(a.clone(), &[1, 1]), || format!("top: {pt}"))?;
        check(pb == mono(b.clone(), &[1, 1]), || format!("bottom: {pb}"))?;
    }
    for a in [int(1), int(3), rat(2, 3)] {
        let b = -a.clone();
        check(p_lk(&top, &a, &b).unwrap() != p_lk(&bottom, &a, &b).unwrap(), || format!("equal at a={a}"))?;
    }
    Ok("a t1 t2 vs b t1 t2, distinct at a = -b".into())
}

fn c3_separation() -> Outcome {
    let d = gen_vlk_braid(2, 1).unwrap();
    let (a, b) = (int(1), int(2));
    let lk = p_lk(&d, &a, &b).unwrap();
    let lkl = p_lk_l(&d, &a, &b).unwrap();
    check(lk.is_zero(), || format!("p_lk = {lk}"))?;
    let want = &mono(int(2), &[1, -1]) + &mono(int(-2), &[-1, 1]);
    check(lkl == want && !lkl.is_zero(), || format!("p_lkL = {lkl}"))?;
    Ok(format!("p_lk = {lk}, p_lkL = {lkl}"))
}

fn c4_generator(made: &mut Vec<TangleDiagram>) -> Outcome {
    for a in 0..=5 {
        for b in 0..=5 {
            let d = gen_vlk_link(a, b).unwrap();
            let m = vlk_matrix(&d);
            check(m[0][1] == a && m[1][0] == -b, || format!("({a},{b}): vlk {m:?}"))?;
            check(wriggle(&d, 0, 1).unwrap() == a + b, || format!("({a},{b}): wriggle"))?;
            check(p_sc(&d).unwrap().is_zero(), || format!("({a},{b}): p_sc"))?;
            made.push(d);
        }
    }
    Ok("36 cases".into())
}

struct Snapshot {
    psc: LaurentPoly,
    lk: Vec<LaurentPoly>,
    lkl: Vec<LaurentPoly>,
    vlk: Vec<Vec<i64>>,
}

fn snapshot(d: &TangleDiagram) -> Snapshot {
    let grid = [(rat(2, 3), rat(-1, 5)), (int(1), int(1))];
    Snapshot {
        psc: p_sc(d).unwrap(),
        lk: grid.iter().map(|(a, b)| p_lk(d, a, b).unwrap()).collect(),
        lkl: grid.iter().map(|(a, b)| p_lk_l(d, a, b).unwrap()).collect(),
        vlk: vlk_matrix(d),
    }
}

fn same(x: &Snapshot, y: &Snapshot) -> bool {
    x.psc == y.psc && x.lk == y.lk && x.lkl == y.lkl && x.vlk == y.vlk
}

fn c5_moves(made: &mut Vec<TangleDiagram>) -> Outcome {
    let mut seeds = vec![
        clasp(),
        parse(include_str!("../data/virtual_trefoil.tangle")).unwrap(),
        parse(include_str!("../data/classical_trefoil.tangle")).unwrap(),
        parse(include_str!("../data/long_virtual_trefoil.tangle")).unwrap(),
        gen_vlk_link(2, 1).unwrap(),
        gen_vlk_link(3, 2).unwrap(),
        gen_vlk_braid(2, 1).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    while seeds.len() < 60 {
        seeds.push(random_tangle(&mut rng, 10));
    }
    let mut steps = 0;
    for (k, d) in seeds.iter().enumerate() {
        let walk = random_walk(d, 200, 1000 + k as u64);
        check(walk.len() == 201, || format!("seed {k}: walk stopped after {} moves", walk.len() - 1))?;
        let base = snapshot(d);
        for (s, w) in walk.iter().enumerate() {
            check(same(&base, &snapshot(w)), || format!("seed {k}, step {s}:\n{}", serialize(w)))?;
        }
        steps += walk.len() - 1;
        made.extend(walk);
    }
    Ok(format!("{} seeds, {steps} moves", seeds.len()))
}

fn c6_order_one(made: &mut Vec<TangleDiagram>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let invs = Invariant::all(&rat(2, 3), &rat(-1, 5));
    for k in 0..120 {
        let s = random_skeleton(&mut rng);
        let classical = rng.gen_range(0..=6);
        let d = scatter_chords(&mut rng, &s, classical, 2);
        for inv in &invs {
            let p = derivative(&d, inv).unwrap();
            check(p.is_zero(), || format!("diagram {k}, {}: {p}\n{}", inv.name(), serialize(&d)))?;
        }
        made.push(d);
    }
    Ok("120 diagrams".into())
}

fn c7_order_exactly_one(made: &mut Vec<TangleDiagram>) -> Outcome {
    let d = parse(include_str!("../data/singular_trefoil.tangle")).unwrap();
    let p = derivative(&d, &Invariant::Psc).unwrap();
    check(p == &mono(int(2), &[1]) - &mono(int(1), &[0]).scale(&int(2)), || format!("derivative = {p}"))?;
    made.push(d);
    Ok(format!("derivative = {p}"))
}

fn c8_additivity(made: &mut Vec<TangleDiagram>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let invs = Invariant::all(&rat(2, 3), &rat(-1, 5));
    let mut pairs = 0;
    for strands in [2, 3] {
        for _ in 0..60 {
            let na = rng.gen_range(0..=8);
            let nb = rng.gen_range(0..=8);
            let t = random_string_link(&mut rng, strands, na);
            let u = random_string_link(&mut rng, strands, nb);
            for (x, y) in [(&t, &u), (&u, &t)] {
                let g = connect(x, y).map_err(|e| e.to_string())?;
                for inv in &invs {
                    let whole = inv.eval(&g.diagram).unwrap();
                    let parts = &g.lift_upper(&inv.eval(x).unwrap()) + &g.lift_lower(&inv.eval(y).unwrap());
                    check(whole == parts, || {
                        format!("{}: {whole} vs {parts}\n{}\n{}", inv.name(), serialize(x), serialize(y))
                    })?;
                }
                made.push(g.diagram);
            }
            made.push(t);
            made.push(u);
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, both orders"))
}

fn c9_henrich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..80 {
        let n = rng.gen_range(0..=10);
        let d = random_knot(&mut rng, n);
        let (x, y) = (p_sc(&d).unwrap(), henrich_pt(&d).unwrap());
        check(x == y, || format!("knot {k}: {x} vs {y}"))?;
    }
    let classical = parse(include_str!("../data/classical_trefoil.tangle")).unwrap();
    check(p_sc(&classical).unwrap().is_zero() && henrich_pt(&classical).unwrap().is_zero(), || {
        "classical trefoil nonzero".into()
    })?;
    let virt = parse(include_str!("../data/virtual_trefoil.tangle")).unwrap();
    let want = &mono(int(2), &[1]) + &mono(int(-2), &[0]);
    check(p_sc(&virt).unwrap() == want && henrich_pt(&virt).unwrap() == want, || "virtual trefoil".into())?;
    Ok("80 knots and both trefoils".into())
}

fn c10_specializations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for k in 0..80 {
        let n = rng.gen_range(0..=10);
        let d = if k % 2 == 0 { random_link(&mut rng, 2, n) } else { random_string_link(&mut rng, 2, n) };
        let m = vlk_matrix(&d);
        for a in [int(1), int(-2), rat(3, 7)] {
            let writhe = p_lk(&d, &a, &a).unwrap().coeff(&[1, 1]);
            check(writhe == &a * int(m[0][1] + m[1][0]), || format!("diagram {k}: a=b gives {writhe}"))?;
            let w = p_lk(&d, &a, &-a.clone()).unwrap().coeff(&[1, 1]);
            check(w == &a * int(wriggle(&d, 0, 1).unwrap()), || format!("diagram {k}: a=-b gives {w}"))?;
        }
    }
    Ok("80 diagrams".into())
}

fn c11_roundtrip(made: &[TangleDiagram]) -> Outcome {
    for (k, d) in made.iter().enumerate() {
        let text = serialize(d);
        let back = parse(&text).map_err(|e| format!("diagram {k}: {e}\n{text}"))?;
        check(equal_diagrams(d, &back), || format!("diagram {k} changed:\n{text}"))?;
    }
    Ok(format!("{} diagrams", made.len()))
}

fn main() {
    let mut made = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = run();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({detail}; {ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} {name}: FAIL: {why}");
            }
        }
    };
    report(1, "clasp values", &mut c1_clasp);
    report(2, "virtualized clasp", &mut c2_virtualized);
    report(3, "separation witness", &mut c3_separation);
    report(4, "linking generator", &mut || c4_generator(&mut made));
    report(5, "move invariance", &mut || c5_moves(&mut made));
    report(6, "order at most one", &mut || c6_order_one(&mut made));
    report(7, "order exactly one", &mut || c7_order_exactly_one(&mut made));
    report(8, "string-link additivity", &mut || c8_additivity(&mut made));
    report(9, "henrich reduction", &mut c9_henrich);
    report(10, "writhe/wriggle specializations", &mut c10_specializations);
    report(11, "round-trip", &mut || c11_roundtrip(&made));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
