//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use logcoh::derham::{binomial_dims, FormModel};
use logcoh::jet::verify_homotopy_identities_with;
use logcoh::residue::NcdChart;
use logcoh::{
    build_stalk_log_model, compare_theorem_f00, gr_cohomology_concentration, q, verify_cech_exactness,
    verify_homotopy_identities, verify_poin05_graded_iso, verify_residue_iso, verify_stalk_poincare, FsMonoid,
    GradedComplex, LogScene, MonoidPrime, PrimeFiltrationModel, RationalMatrix, Q,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn compare_both(scene: &LogScene, expected: &[usize], label: &str) -> Result<usize, String> {
    let rep = compare_theorem_f00(scene).map_err(e)?;
    let pad = |v: &[usize]| {
        let mut v = v.to_vec();
        v.resize(expected.len().max(v.len()), 0);
        v
    };
    ensure(pad(&rep.algebraic) == pad(expected) && pad(&rep.betti) == pad(expected), || {
        format!("{label}: algebraic {:?}, betti {:?}, expected {expected:?}", rep.algebraic, rep.betti)
    })?;
    Ok(rep.stabilized_at)
}

fn free_plane() -> FsMonoid {
    FsMonoid::free(2)
}

fn quadric() -> FsMonoid {
    FsMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap()
}

fn three_way() -> Outcome {
    for r in 1..=3 {
        compare_both(&LogScene::ncd_origin(r, r).map_err(e)?, &binomial_dims(r, r), &format!("ℕ^{r} origin"))?;
    }
    let divisor = LogScene::monomial(free_plane(), 0, vec![vec![1, 1]]).map_err(e)?;
    compare_both(&divisor, &[1, 2, 1], "V(z1 z2)")?;
    Ok("r = 1, 2, 3 give C(r, q); V(z1 z2) gives (1, 2, 1)".into())
}

fn singular_base() -> Outcome {
    let scene = LogScene::monomial(quadric(), 0, quadric().generators().to_vec()).map_err(e)?;
    let n = compare_both(&scene, &[1, 2, 1], "quadric cone")?;
    Ok(format!("(1, 2, 1) on both sides, stable at n = {n}"))
}

fn non_deep_stratum() -> Outcome {
    let two = LogScene::fat_point(free_plane(), vec![q(0), q(1)], vec![]).map_err(e)?;
    let one = LogScene::fat_point(FsMonoid::free(1), vec![q(0)], vec![q(1)]).map_err(e)?;
    let n2 = compare_both(&two, &[1, 1, 0], "two logged coordinates")?;
    let n1 = compare_both(&one, &[1, 1, 0], "one logged coordinate")?;
    ensure(n1 <= 8 && n2 <= 8, || format!("stabilized at {n1} and {n2}, beyond 8"))?;
    Ok(format!("(1, 1, 0); n* = {n1} (one log), {n2} (two logs)"))
}

fn union_of_axes() -> Outcome {
    let scene = LogScene::monomial(free_plane(), 0, vec![vec![1, 1]]).map_err(e)?;
    let n = compare_both(&scene, &[1, 2, 1], "axes")?;
    Ok(format!("(1, 2, 1) by slices and by Mayer-Vietoris, stable at n = {n}"))
}

fn corrupted(k: usize, p: usize) -> Q {
    Q::new(BigInt::from(1), BigInt::from(k + p + 1))
}

fn homotopy() -> Outcome {
    let mut checked = 0;
    for r in 1..=3 {
        for i in 0..=4 {
            let h = verify_homotopy_identities(r, i);
            ensure(h.passed(), || format!("r={r} i={i}: {}", h.counterexample.clone().unwrap_or_default()))?;
            checked += h.checked;
        }
    }
    let bad = verify_homotopy_identities_with(2, 3, corrupted);
    let witness = bad.counterexample.ok_or("corrupted coefficients were not detected")?;
    Ok(format!("{checked} basis elements exact; corrupted fixture caught at {witness}"))
}

fn residue() -> Outcome {
    let mut cases = 0;
    for n in 1..=3 {
        let origin: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut ideals = vec![("origin", origin)];
        if n >= 2 {
            ideals.push(("V(z1 z2)", vec![(0..n).map(|j| i64::from(j < 2)).collect()]));
        }
        for r in 1..=n {
            for (name, gens) in &ideals {
                let chart = NcdChart::new(n, r, gens.clone()).map_err(e)?;
                for k in 0..=r {
                    let label = format!("n={n} r={r} k={k} Y={name}");
                    let iso = verify_residue_iso(&chart, k, 4, 2).map_err(e)?;
                    ensure(iso.passed(), || format!("{label}: {}", iso.counterexample.clone().unwrap_or_default()))?;
                    let gr = gr_cohomology_concentration(&chart, k, 12, 2).map_err(e)?;
                    ensure(gr.passed(), || {
                        format!("{label}: Gr dims {:?}, expected {} in degree {k}", gr.dims, gr.expected_at_k)
                    })?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} (n, r, k, Y) cases: residue bijective, Gr concentrated in degree k"))
}

fn graded_pieces() -> Outcome {
    let scene = LogScene::ncd_origin(2, 2).map_err(e)?;
    let prime = MonoidPrime::new(free_plane(), vec![1]).map_err(e)?;
    let model = PrimeFiltrationModel::new(&scene, &prime).map_err(e)?;
    let mut slices = 0;
    for r in 0..=1 {
        let rep = verify_poin05_graded_iso(&model, r, 6, 2).map_err(e)?;
        ensure(rep.passed(), || format!("r={r}: {}", rep.counterexample.clone().unwrap_or("ranks".into())))?;
        slices += rep.slices;
    }
    Ok(format!("{slices} (slice, level) pairs, levels 1..=6, r = 0, 1"))
}

fn stalk() -> Outcome {
    let mut out = Vec::new();
    for r in 1..=2 {
        let model = build_stalk_log_model(&LogScene::ncd_origin(r, r).map_err(e)?).map_err(e)?;
        let rep = verify_stalk_poincare(&model, 8, 2).map_err(e)?;
        ensure(rep.passed(), || format!("ℕ^{r}: {:?} (trace {:?})", rep.dims, rep.trace))?;
        out.push(format!("ℕ^{r} {:?} at {}", rep.dims, rep.stabilized_at));
    }
    Ok(out.join(", "))
}

fn koszul_samples(scene: &LogScene, seed: u64) -> Result<usize, String> {
    let model = FormModel::for_scene(scene).map_err(e)?;
    let ideal = scene.monomial_ideal().map_err(e)?;
    let d = scene.combined_monoid().ambient_rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < 100 {
        let key: Vec<i64> = (0..d).map(|_| rng.gen_range(0..6)).collect();
        if key.iter().all(|&x| x == 0) {
            continue;
        }
        let ord = ideal.adic_order(&key).map_err(e)?.ok_or("key outside the monoid")?;
        let level = ord + model.omega_rank() + 1;
        let h = model.slice_complex(&key, level).map_err(e)?.cohomology();
        ensure(h.dims().iter().all(|&x| x == 0), || format!("Koszul slice {key:?}: {:?}", h.dims()))?;
        done += 1;
    }
    Ok(done)
}

fn cech() -> Outcome {
    let mut slices = 0;
    for r in 1..=2 {
        let scene = LogScene::ncd_origin(r, r).map_err(e)?;
        for i in 0..=2 {
            for n in 1..=2 {
                let rep = verify_cech_exactness(&scene, 2, i, n).map_err(e)?;
                ensure(rep.passed(), || format!("ℕ^{r} i={i} n={n}: {:?}", rep.slices.iter().find(|s| !s.exact)))?;
                slices += rep.slices.len();
            }
        }
        koszul_samples(&scene, r as u64)?;
    }
    Ok(format!("{slices} Čech slices exact; 100 Koszul multidegrees per scene acyclic"))
}

fn scene_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenes")
}

fn run_cli(args: &[&str], threads: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_logcoh"))
        .args(args)
        .args(["--no-meta", "--quiet"])
        .env("LOGCOH_THREADS", threads)
        .output()
        .map_err(e)?;
    Ok(out.stdout)
}

fn hygiene() -> Outcome {
    let bad = RationalMatrix::from_i64_rows(&[vec![1]]);
    let rejected = GradedComplex::new(0, vec![vec![0], vec![0], vec![0]], vec![bad.clone(), bad]).is_err();
    ensure(rejected, || "a complex with d∘d ≠ 0 was accepted".into())?;
    let scenes = [
        LogScene::ncd_origin(2, 2).map_err(e)?,
        LogScene::monomial(quadric(), 0, quadric().generators().to_vec()).map_err(e)?,
        LogScene::monomial(free_plane(), 0, vec![vec![1, 1]]).map_err(e)?,
    ];
    let mut complexes = 0;
    for scene in &scenes {
        let model = FormModel::for_scene(scene).map_err(e)?;
        for key in model.keys_up_to_degree(3).map_err(e)? {
            for level in 1..=5 {
                let c = model.slice_complex(&key, level).map_err(e)?;
                let chi = c.cohomology().euler_characteristic();
                ensure(c.euler_characteristic() == chi, || format!("Euler mismatch at {key:?}, level {level}"))?;
                complexes += 1;
            }
        }
    }
    let dir = scene_dir();
    let path = |f: &str| dir.join(f).to_string_lossy().into_owned();
    let runs = [
        vec!["compare".to_string(), path("quadric.scene")],
        vec!["residue-check".to_string(), path("ncd3.scene")],
        vec!["cech-check".to_string(), path("line.scene")],
        vec!["homotopy-check".to_string()],
    ];
    for args in &runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run_cli(&args, "1")?;
        let b = run_cli(&args, "4")?;
        ensure(!a.is_empty() && a == b, || format!("`{}` output differs between runs", args.join(" ")))?;
    }
    Ok(format!("{complexes} complexes with matching Euler characteristics; {} reports byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("three-way comparison on ℕ^r", three_way),
        ("quadric cone", singular_base),
        ("non-deep stratum", non_deep_stratum),
        ("union of axes", union_of_axes),
        ("jet homotopy identities", homotopy),
        ("weight residues", residue),
        ("face filtration graded pieces", graded_pieces),
        ("formal log Poincaré lemma", stalk),
        ("Čech exactness and Koszul slices", cech),
        ("engine hygiene", hygiene),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    let total = start.elapsed();
    println!("acceptance: {} of {} passed in {:.1}s", criteria.len() - failed, criteria.len(), total.as_secs_f64());
    if failed > 0 || total > Duration::from_secs(60) {
        std::process::exit(1);
    }
}
