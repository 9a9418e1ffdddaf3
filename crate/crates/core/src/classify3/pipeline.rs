use super::label::{c_pair_representative, canonical_algebra, CanonicalLabel};
use super::{ClassificationResult, ClassifyError, ClassifyOptions, TraceStep};
use crate::fields::{Field, FieldElement};
use crate::linalg::{skew_congruence_reduce, sl2_trace_minus_one_canonical, LinalgError, Matrix, Sl2Kind};
use crate::omega::{push_forward, validate, GroupElement, OmegaAlgebra};

/// `[x,y] = a·(x,y,z)`, `[x,z] = b·(x,y,z)`, `[y,z] = c·(x,y,z)`.
struct Coeffs {
    a: Vec<FieldElement>,
    b: Vec<FieldElement>,
    c: Vec<FieldElement>,
}

struct Run {
    k: Field,
    cur: OmegaAlgebra,
    witness: GroupElement,
    trace: Vec<TraceStep>,
}

impl Run {
    fn coeffs(&self) -> Coeffs {
        let sc = self.cur.structure();
        Coeffs {
            a: sc.bracket(0, 1),
            b: sc.bracket(0, 2),
            c: sc.bracket(1, 2),
        }
    }

    /// Passes to the basis given by the columns of `h`.
    fn change_basis(&mut self, tag: &str, h: Matrix) -> Result<(), ClassifyError> {
        if h == Matrix::identity(&self.k, 3) {
            return Ok(());
        }
        let g = GroupElement::from_inverse(h)?;
        self.cur = push_forward(&g, &self.cur)?;
        self.witness = g.compose(&self.witness)?;
        self.trace.push(TraceStep {
            tag: tag.to_string(),
            element: g,
        });
        Ok(())
    }

    /// New basis vectors given by their coordinates in the current basis.
    fn new_basis(&mut self, tag: &str, cols: [[FieldElement; 3]; 3]) -> Result<(), ClassifyError> {
        let h = Matrix::from_columns(&self.k, &cols.map(Vec::from))?;
        self.change_basis(tag, h)
    }

    fn check(&self, ok: bool, what: &str) -> Result<(), ClassifyError> {
        if ok {
            Ok(())
        } else {
            Err(ClassifyError::Internal(format!(
                "{what} after {} steps",
                self.trace.len()
            )))
        }
    }
}

/// Entry point: validates, then runs the case analysis, restarting over a
/// quadratic extension when an eigenvalue or square root is missing.
pub(super) fn classify(alg: &OmegaAlgebra, opts: ClassifyOptions) -> Result<ClassificationResult, ClassifyError> {
    if alg.dim() != 3 {
        return Err(ClassifyError::WrongDimension(alg.dim()));
    }
    let report = validate(alg);
    if !report.is_valid() {
        return Err(ClassifyError::NotOmegaLie(report.to_string()));
    }
    if alg.omega().is_zero() {
        return Err(ClassifyError::IsLie);
    }
    if alg.field().characteristic() == 2 {
        return Err(ClassifyError::CharacteristicTwo);
    }
    match run(alg, opts.strict_c_labels) {
        Err(ClassifyError::ExtensionRequired(minpoly)) if opts.allow_extension => {
            let ext = minpoly.extension_field()?;
            let mut result = run(&alg.embed(&ext)?, opts.strict_c_labels)?;
            result.extension = Some(minpoly);
            Ok(result)
        }
        other => other,
    }
}

fn run(alg: &OmegaAlgebra, strict: bool) -> Result<ClassificationResult, ClassifyError> {
    let k = alg.field().clone();
    let mut run = Run {
        k: k.clone(),
        cur: alg.clone(),
        witness: GroupElement::identity(&k, 3),
        trace: Vec::new(),
    };
    let (zero, one) = (k.zero(), k.one());
    let e = |i: usize| {
        let mut v = [zero.clone(), zero.clone(), zero.clone()];
        v[i] = one.clone();
        v
    };

    let reduced = skew_congruence_reduce(alg.omega())?;
    if reduced.rank == 0 {
        return Err(ClassifyError::IsLie);
    }
    run.change_basis("omega-normal-form", reduced.q)?;

    // A and D have [x,y] without z-part; take them as they are
    for label in [CanonicalLabel::A, CanonicalLabel::D] {
        if run.cur == canonical_algebra(&label, &k)? {
            return Ok(ClassificationResult {
                label,
                witness: run.witness,
                extension: None,
                trace: run.trace,
            });
        }
    }

    if run.coeffs().a[2].is_zero() {
        leading_z_component(&mut run, &e)?;
    }

    let a3 = run.coeffs().a[2].clone();
    if !a3.is_one() {
        run.new_basis("scale-z", [e(0), e(1), [zero.clone(), zero.clone(), a3]])?;
    }

    let cf = run.coeffs();
    let delta = &(&cf.b[0] * &cf.c[1]) - &(&cf.b[1] * &cf.c[0]);
    let label = if delta.is_zero() {
        singular_branch(&mut run, &e)?
    } else {
        regular_branch(&mut run, &e, strict)?
    };

    let target = canonical_algebra(&label, &k)?;
    if run.cur != target {
        return Err(ClassifyError::Internal(format!("pipeline ended away from {label}")));
    }
    debug_assert_eq!(push_forward(&run.witness, alg)?, target);
    Ok(ClassificationResult {
        label,
        witness: run.witness,
        extension: None,
        trace: run.trace,
    })
}

/// `a3 = 0`: normalize `[x,y] = x`, force `[y,z]` to have no z-part, then
/// shear until `[x,y]` has a z-component.
fn leading_z_component(run: &mut Run, e: &dyn Fn(usize) -> [FieldElement; 3]) -> Result<(), ClassifyError> {
    let k = run.k.clone();
    let (zero, one) = (k.zero(), k.one());
    let vec3 = |a: FieldElement, b: FieldElement, c: FieldElement| [a, b, c];
    if run.coeffs().a[0].is_zero() {
        run.new_basis("a3-zero:swap", [e(1), vec3(-&one, zero.clone(), zero.clone()), e(2)])?;
    }
    let a1 = run.coeffs().a[0].clone();
    run.check(!a1.is_zero(), "a1 vanishes with a3 = 0")?;
    if !a1.is_one() {
        let inv = a1.inv()?;
        run.new_basis(
            "a3-zero:scale",
            [
                vec3(a1, zero.clone(), zero.clone()),
                vec3(zero.clone(), inv, zero.clone()),
                e(2),
            ],
        )?;
    }
    let a2 = run.coeffs().a[1].clone();
    if !a2.is_zero() {
        run.new_basis("a3-zero:clear-a2", [vec3(one.clone(), a2, zero.clone()), e(1), e(2)])?;
    }
    let cf = run.coeffs();
    run.check(cf.b[2].is_one(), "b3 differs from 1 with [x,y] = x")?;
    if !cf.c[2].is_zero() {
        run.new_basis(
            "a3-zero:clear-c3",
            [e(0), vec3(-&cf.c[2], one.clone(), zero.clone()), e(2)],
        )?;
    }
    // the z-coordinate is a nonzero quadratic in (t1, t2), so a small grid suffices
    let grid = (-3i64..=3).flat_map(|t1| (-3i64..=3).map(move |t2| (t1, t2)));
    for (t1, t2) in grid.filter(|&t| t != (0, 0)) {
        let cols = [
            vec3(one.clone(), zero.clone(), k.from_i64(t1)),
            vec3(zero.clone(), one.clone(), k.from_i64(t2)),
            e(2),
        ];
        let h = Matrix::from_columns(&k, &cols.clone().map(Vec::from))?;
        let trial = push_forward(&GroupElement::from_inverse(h)?, &run.cur)?;
        // z-coordinate of [x', y'] in the sheared basis
        if !trial.structure().bracket(0, 1)[2].is_zero() {
            run.new_basis("a3-zero:shear", cols)?;
            return Ok(());
        }
    }
    Err(ClassifyError::Internal("no shear produces a z-component".into()))
}

/// `Δ ≠ 0`: reach `[x,y] = z` with a shear, then put `M` in its `SL₂`
/// canonical form.
fn regular_branch(
    run: &mut Run,
    e: &dyn Fn(usize) -> [FieldElement; 3],
    strict: bool,
) -> Result<CanonicalLabel, ClassifyError> {
    let k = run.k.clone();
    let (zero, one) = (k.zero(), k.one());
    let cf = run.coeffs();
    // c_i t1 − b_i t2 (+ d in the z-row) = a_i, (a_3 → 1)
    let system = Matrix::from_rows(
        &k,
        vec![
            vec![cf.c[0].clone(), -&cf.b[0], zero.clone()],
            vec![cf.c[1].clone(), -&cf.b[1], zero.clone()],
            vec![cf.c[2].clone(), -&cf.b[2], one.clone()],
        ],
    )?;
    let rhs = [cf.a[0].clone(), cf.a[1].clone(), one.clone()];
    let sol = system.solve(&rhs)?;
    run.check(sol.is_unique(), "the shear system is not uniquely solvable")?;
    let [t1, t2, d] = [0, 1, 2].map(|i| sol.particular[i].clone());
    run.check(!d.is_zero(), "the shear system gives d = 0")?;
    if !(t1.is_zero() && t2.is_zero() && d.is_one()) {
        run.new_basis(
            "delta-nonzero:shear",
            [
                [one.clone(), zero.clone(), t1],
                [zero.clone(), one.clone(), t2],
                [zero.clone(), zero.clone(), d],
            ],
        )?;
    }
    let cf = run.coeffs();
    run.check(
        cf.a[0].is_zero() && cf.a[1].is_zero() && cf.a[2].is_one() && cf.b[2].is_zero() && cf.c[2].is_zero(),
        "[x,y] = z with b3 = c3 = 0 was not reached",
    )?;
    let m = Matrix::from_rows(
        &k,
        vec![
            vec![cf.b[0].clone(), cf.c[0].clone()],
            vec![cf.b[1].clone(), cf.c[1].clone()],
        ],
    )?;
    let mut canon = sl2_trace_minus_one_canonical(&m, false).map_err(|err| match err {
        LinalgError::ExtensionRequired(minpoly) => ClassifyError::ExtensionRequired(minpoly),
        other => other.into(),
    })?;
    let label = match &canon.kind {
        Sl2Kind::DistinctDiag(b) => {
            if !strict && c_pair_representative(b) != *b {
                canon = canon.swapped();
            }
            match &canon.kind {
                Sl2Kind::DistinctDiag(b) => CanonicalLabel::C(b.clone()),
                _ => unreachable!("swapping keeps the kind"),
            }
        }
        Sl2Kind::ScalarHalf => CanonicalLabel::C(-k.from_ratio(1, 2)?),
        Sl2Kind::JordanHalf => CanonicalLabel::B,
    };
    let p = &canon.p;
    if *p != Matrix::identity(&k, 2) {
        let tag = match canon.kind {
            Sl2Kind::JordanHalf => "delta-nonzero:jordan",
            _ => "delta-nonzero:diagonalize",
        };
        run.new_basis(
            tag,
            [
                [p.get(0, 0).clone(), p.get(1, 0).clone(), zero.clone()],
                [p.get(0, 1).clone(), p.get(1, 1).clone(), zero.clone()],
                e(2),
            ],
        )?;
    }
    Ok(label)
}

/// `Δ = 0`: the map `v ↦ [v, z]` on `⟨x, y⟩` is zero, nilpotent or of rank
/// one with nonzero trace, giving `D`, `A` and `C(−1)`.
fn singular_branch(run: &mut Run, e: &dyn Fn(usize) -> [FieldElement; 3]) -> Result<CanonicalLabel, ClassifyError> {
    let k = run.k.clone();
    let (zero, one) = (k.zero(), k.one());
    let vec3 = |a: FieldElement, b: FieldElement, c: FieldElement| [a, b, c];
    let cf = run.coeffs();
    let m = Matrix::from_rows(
        &k,
        vec![
            vec![cf.b[0].clone(), cf.c[0].clone()],
            vec![cf.b[1].clone(), cf.c[1].clone()],
        ],
    )?;
    let trace = m.trace();

    if m.is_zero() {
        // [x,z] = b3 z and [y,z] = c3 z: make [x,z] = 0, [y,z] = z
        let (b3, c3) = (cf.b[2].clone(), cf.c[2].clone());
        let second = if c3.is_zero() {
            run.check(!b3.is_zero(), "b3 = c3 = 0 with M = 0")?;
            vec3(b3.inv()?, zero.clone(), zero.clone())
        } else {
            vec3(zero.clone(), c3.inv()?, zero.clone())
        };
        run.new_basis("delta-zero:m-zero:split", [vec3(c3, -&b3, zero.clone()), second, e(2)])?;
        let a = run.coeffs().a;
        run.check(a[1].is_one(), "[x,y] has y-coefficient other than 1")?;
        // y' = [x, y]
        run.new_basis(
            "delta-zero:m-zero:bracket",
            [e(0), vec3(a[0].clone(), a[1].clone(), a[2].clone()), e(2)],
        )?;
        return Ok(CanonicalLabel::D);
    }

    if !trace.is_zero() {
        // rank one: eigenvector for the trace, then the kernel
        let shifted = m.try_sub(&Matrix::identity(&k, 2).scale(&trace))?;
        let u = shifted
            .kernel()
            .pop()
            .ok_or_else(|| ClassifyError::Internal("no eigenvector".into()))?;
        let kv = m
            .kernel()
            .pop()
            .ok_or_else(|| ClassifyError::Internal("no kernel vector".into()))?;
        let det = &(&u[0] * &kv[1]) - &(&u[1] * &kv[0]);
        let inv = det.inv()?;
        run.new_basis(
            "delta-zero:rank-one:eigenbasis",
            [
                vec3(u[0].clone(), u[1].clone(), zero.clone()),
                vec3(&kv[0] * &inv, &kv[1] * &inv, zero.clone()),
                e(2),
            ],
        )?;
        let scale = -trace.inv()?;
        run.new_basis(
            "delta-zero:rank-one:scale-z",
            [e(0), e(1), vec3(zero.clone(), zero.clone(), scale)],
        )?;
        let b3 = run.coeffs().b[2].clone();
        if !b3.is_zero() {
            run.new_basis(
                "delta-zero:rank-one:clear-b3",
                [vec3(one.clone(), zero.clone(), -&b3), e(1), e(2)],
            )?;
        }
        let a1 = run.coeffs().a[0].clone();
        if !a1.is_zero() {
            run.new_basis(
                "delta-zero:rank-one:clear-a1",
                [e(0), vec3(zero.clone(), one.clone(), a1), e(2)],
            )?;
        }
        return Ok(CanonicalLabel::C(-one));
    }

    // nilpotent: x' = u outside the kernel, y' = M u / det[u, M u]
    let u = if m.column(0).iter().all(FieldElement::is_zero) {
        vec![zero.clone(), one.clone()]
    } else {
        vec![one.clone(), zero.clone()]
    };
    let w = m.mul_vec(&u);
    let kappa = &(&u[0] * &w[1]) - &(&u[1] * &w[0]);
    let inv = kappa.inv()?;
    run.new_basis(
        "delta-zero:nilpotent:basis",
        [
            vec3(u[0].clone(), u[1].clone(), zero.clone()),
            vec3(&w[0] * &inv, &w[1] * &inv, zero.clone()),
            e(2),
        ],
    )?;
    // now [x,z] = κ y + b3 z, [y,z] = c3 z
    let cf = run.coeffs();
    let (kappa, mu) = (cf.b[1].clone(), cf.c[2].clone());
    run.check(!mu.is_zero(), "c3 vanishes in the nilpotent case")?;
    let lambda = (&kappa * &(&mu * &mu)).inv()?;
    run.new_basis(
        "delta-zero:nilpotent:scale",
        [
            vec3(mu.clone(), zero.clone(), zero.clone()),
            vec3(zero.clone(), mu.inv()?, zero.clone()),
            vec3(zero.clone(), zero.clone(), lambda),
        ],
    )?;
    let b3 = run.coeffs().b[2].clone();
    if !b3.is_zero() {
        run.new_basis(
            "delta-zero:nilpotent:clear-b3",
            [vec3(one.clone(), -&b3, zero.clone()), e(1), e(2)],
        )?;
    }
    let a3 = run.coeffs().a[2].clone();
    if !a3.is_zero() {
        let t = &a3 * &k.from_ratio(1, 2)?;
        run.new_basis(
            "delta-zero:nilpotent:unipotent",
            [vec3(one.clone(), zero.clone(), t), e(1), e(2)],
        )?;
    }
    Ok(CanonicalLabel::A)
}
