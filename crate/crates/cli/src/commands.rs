use num_bigint::BigInt;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use zetalab::bundles::{invariant, mass_recursion_beta, strata_census, Convention, EllipticData, InvariantKind};
use zetalab::exact::{rat, RatFunc};
use zetalab::explicit::{
    ff_explicit_formula_check, ff_hodge_defect, ff_positivity, global_pairing, load_zeros, riemann_weil_residual,
    FFTestFn, MicroModel, NFTestFn, QuadSpec,
};
use zetalab::fields::{group_structure, FieldSpec, WeierstrassCurve};
use zetalab::lattice::{
    hn_filtration, is_semistable, is_stable, reduce_rank2, rr_check, unimodular_semistable_check, xi_q, Lattice,
};
use zetalab::nonabelian::{
    allbundles_rank2, andrianov_formal_match, andrianov_substitution, ell_na_zeta, global_na_zeta_partial,
    na_counts, na_properties_check, rank2_numerator_bipoly, spinor_numerator, GlobalCurve,
};
use zetalab::zeta::{
    artin_zeta_from_counts, fe_check_zeta, nm, reciprocity_check, rh_check, zeta_of_curve, ZetaCurve,
};
use zetalab::{Error, Result};

use crate::cli::{Command, CurveArgs, EllipticArgs, LatticeArgs};
use crate::parse::{parse_complex, parse_curve, parse_u64_list};
use crate::report::{Report, Table, Val};

fn curve(args: &CurveArgs) -> Result<Option<WeierstrassCurve>> {
    let Some(s) = &args.curve else { return Ok(None) };
    let p = args.p.ok_or_else(|| Error::Invalid("--curve needs --p".into()))?;
    let (a, b) = parse_curve(s)?;
    let f = FieldSpec::new(p, args.n)?;
    let (a, b) = (f.from_int(a), f.from_int(b));
    Ok(Some(WeierstrassCurve::new(f, a, b)?))
}

fn curve_fields(r: &mut Report, c: &WeierstrassCurve) {
    r.field("p", Val::int(c.field.p()))
        .field("n", Val::int(c.field.n()))
        .field("q", Val::int(c.q()))
        .field("a", Val::int(c.a))
        .field("b", Val::int(c.b));
}

fn elliptic(args: &EllipticArgs, r: &mut Report) -> Result<EllipticData> {
    if let Some(c) = curve(&args.curve)? {
        curve_fields(r, &c);
        return EllipticData::from_curve(&c);
    }
    match (args.q, args.n1) {
        (Some(q), Some(n1)) => {
            r.field("q", Val::int(q));
            Ok(EllipticData::from_counts(q, n1))
        }
        _ => Err(Error::Invalid("give --curve with --p, or --q with --n1".into())),
    }
}

fn artin_data(
    c: &CurveArgs,
    q: Option<u64>,
    genus: Option<usize>,
    counts: &Option<String>,
    r: &mut Report,
) -> Result<ZetaCurve> {
    if let Some(c) = curve(c)? {
        curve_fields(r, &c);
        let g = group_structure(&c)?;
        r.field("group", Val::List(vec![Val::int(g.n1), Val::int(g.n2)]));
        return zeta_of_curve(&c);
    }
    match (q, genus, counts) {
        (Some(q), Some(g), Some(cs)) => {
            r.field("q", Val::int(q));
            artin_zeta_from_counts(q, g, &parse_u64_list(cs)?)
        }
        _ => Err(Error::Invalid("give --curve with --p, or --q, --genus and --counts".into())),
    }
}

fn convention(s: &str) -> Result<Convention> {
    s.parse()
}

fn integer_coeffs(p: &zetalab::exact::Poly) -> Val {
    Val::List(p.coeffs().iter().map(|c| if c.is_integer() { Val::Int(c.to_integer()) } else { Val::Rat(c.clone()) }).collect())
}

fn ratfunc(f: &RatFunc) -> Val {
    Val::Str(format!("({}) / ({})", f.num(), f.den()))
}

fn lattice(a: &LatticeArgs) -> Result<Lattice> {
    match (&a.lattice, &a.gram) {
        (Some(b), None) => Lattice::parse_basis(b),
        (None, Some(g)) => Lattice::parse_gram(g),
        _ => Err(Error::Invalid("give exactly one of --lattice and --gram".into())),
    }
}

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Artin { curve, q, genus, counts, terms } => artin(curve, *q, *genus, counts, *terms),
        Command::Nazeta { rank, convention: conv, data, terms } => nazeta(*rank, conv, data, *terms),
        Command::Census { rank, convention: conv, data } => census(*rank, conv, data),
        Command::Mass { rank, data, dmin, dmax } => mass(*rank, data, *dmin, *dmax),
        Command::Allbundles { data, order } => allbundles(data, *order),
        Command::Euler { curve, rank, s, bound, convention: conv } => euler(curve, *rank, s, *bound, conv),
        Command::Lattice { lat } => lattice_report(lat),
        Command::Theta { lat, tol } => theta(lat, *tol),
        Command::Xi { s, eps } => xi(s, *eps),
        Command::ExplicitFf { curve, q, genus, counts, seed, count, span } => {
            explicit_ff(curve, *q, *genus, counts, *seed, *count, *span)
        }
        Command::ExplicitNf { zeros, k, mu, sigma, mu2, sigma2, prime_bound } => {
            explicit_nf(zeros, k, *mu, *sigma, *mu2, *sigma2, *prime_bound)
        }
        Command::Andrianov => Ok(andrianov()),
    }
}

fn artin(c: &CurveArgs, q: Option<u64>, genus: Option<usize>, counts: &Option<String>, terms: usize) -> Result<Report> {
    let mut r = Report::new("artin");
    let z = artin_data(c, q, genus, counts, &mut r)?;
    let fe = fe_check_zeta(&z);
    let rh = rh_check(&z, 1e-9)?;
    let recip: Vec<bool> = (2..=4).map(|k| reciprocity_check(&z, k, 8)).collect::<Result<_>>()?;
    let n: Vec<BigInt> = (1..=terms.max(1)).into_par_iter().map(|m| nm(&z, m)).collect::<Result<_>>()?;
    let roots = z.reciprocal_roots()?;
    r.field("genus", Val::int(z.g()))
        .field("P", integer_coeffs(z.numerator()))
        .field("fe", Val::Bool(fe))
        .field("rh", Val::Bool(rh))
        .field("reciprocity_n2_to_4", Val::List(recip.iter().map(|&b| Val::Bool(b)).collect()))
        .field("N", Val::List(n.iter().cloned().map(Val::Int).collect()))
        .field("reciprocal_root_moduli", Val::List(roots.iter().map(|w| Val::Real(w.norm())).collect()));
    let mut t = Table::new("counts", &["m", "N_m"]);
    for (m, v) in n.into_iter().enumerate() {
        t.push(vec![Val::int(m as u64 + 1), Val::Int(v)]);
    }
    r.table(t);
    r.set_ok(fe && rh && recip.iter().all(|&b| b));
    Ok(r)
}

fn nazeta(rank: u32, conv: &str, data: &EllipticArgs, terms: usize) -> Result<Report> {
    let mut r = Report::new("nazeta");
    let conv = convention(conv)?;
    let e = elliptic(data, &mut r)?;
    let z = ell_na_zeta(rank, &e, conv)?;
    let props = na_properties_check(&z, 1e-9)?;
    let counts: Vec<_> = (1..=terms.max(1)).into_par_iter().map(|m| na_counts(&z, m)).collect::<Result<_>>()?;
    r.field("N1", Val::int(e.n1))
        .field("rank", Val::int(rank))
        .field("convention", Val::Str(conv.name().into()))
        .field("scale", Val::Rat(z.p.coeff(0)))
        .field("numerator", Val::rats(&z.normalized_numerator()))
        .field("numerator_raw", Val::rats(&z.p))
        .field("denominator", Val::rats(&z.denominator()))
        .field("degree_ok", Val::Bool(props.degree_ok))
        .field("functional_equation", Val::Bool(props.functional_equation))
        .field("poles_ok", Val::Bool(props.poles_ok))
        .field("root_pairing_residual", Val::Real(props.root_pairing_residual))
        .field("root_pairing_ok", Val::Bool(props.root_pairing_ok))
        .field("counts_match_log_derivative", Val::Bool(props.counts_match_log_derivative));
    let mut t = Table::new("counts", &["m", "N_C_r"]);
    for (m, v) in counts.into_iter().enumerate() {
        t.push(vec![Val::int(m as u64 + 1), Val::Rat(v)]);
    }
    r.table(t);
    r.set_ok(props.all_ok());
    Ok(r)
}

fn census(rank: u32, conv: &str, data: &EllipticArgs) -> Result<Report> {
    let mut r = Report::new("census");
    let conv = convention(conv)?;
    let e = elliptic(data, &mut r)?;
    let c = strata_census(rank, &e, conv)?;
    r.field("N1", Val::int(e.n1))
        .field("rank", Val::int(rank))
        .field("convention", Val::Str(conv.name().into()))
        .field("lambda_trivial", Val::Bool(c.lambda_trivial))
        .field("total_classes", Val::Int(c.total_classes()))
        .field("beta", Val::Rat(c.beta()))
        .field("gamma", Val::Rat(c.gamma()));
    let mut t = Table::new("classes", &["stratum", "graded", "classes", "beta_per_class", "gamma_per_class"]);
    for row in &c.rows {
        let gr: Vec<String> =
            row.gr.iter().map(|(tag, m)| if *m == 1 { tag.to_string() } else { format!("{tag}^{m}") }).collect();
        t.push(vec![
            Val::Str(row.stratum.to_string()),
            Val::Str(gr.join("+")),
            Val::Int(row.classes.clone()),
            Val::Rat(row.beta.clone()),
            Val::Rat(row.gamma.clone()),
        ]);
    }
    r.table(t);
    let mut s = Table::new("strata", &["stratum", "classes", "beta"]);
    for (k, n, b) in c.by_stratum() {
        s.push(vec![Val::Str(k.to_string()), Val::Int(n), Val::Rat(b)]);
    }
    r.table(s);
    Ok(r)
}

fn mass(rank: u32, data: &EllipticArgs, dmin: i64, dmax: i64) -> Result<Report> {
    let mut r = Report::new("mass");
    if dmin > dmax {
        return Err(Error::Invalid(format!("empty degree range {dmin}..{dmax}")));
    }
    let e = elliptic(data, &mut r)?;
    let z = e.zeta()?;
    r.field("N1", Val::int(e.n1)).field("rank", Val::int(rank));
    let rows: Vec<Vec<Val>> = (dmin..=dmax)
        .into_par_iter()
        .map(|d| {
            let split = invariant(InvariantKind::Beta, rank, d, &e, Convention::PaperSplit)?;
            let descent = invariant(InvariantKind::Beta, rank, d, &e, Convention::GaloisDescent)?;
            let rec = mass_recursion_beta(rank, d, &z)?;
            let diff = &split - &rec;
            Ok(vec![
                Val::int(d),
                Val::Rat(split),
                Val::Rat(descent.clone()),
                Val::Rat(rec.clone()),
                Val::Bool(descent == rec),
                Val::Rat(diff),
            ])
        })
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|row| row[4] == Val::Bool(true));
    let mut t = Table::new("beta", &["d", "split", "descent", "recursion", "descent_matches", "split_minus_recursion"]);
    rows.into_iter().for_each(|row| t.push(row));
    r.table(t);
    r.set_ok(ok);
    Ok(r)
}

fn allbundles(data: &EllipticArgs, order: usize) -> Result<Report> {
    let mut r = Report::new("allbundles");
    let e = elliptic(data, &mut r)?;
    let a = allbundles_rank2(&e, order)?;
    let pos = a.positive_agrees();
    r.field("N1", Val::int(e.n1))
        .field("order", Val::int(a.order))
        .field("zero_closed", Val::Rat(a.zero_closed.clone()))
        .field("zero_direct", Val::Rat(a.zero_direct.clone()))
        .field("zero_agrees", Val::Bool(a.zero_agrees()))
        .field("positive_agrees", Val::List(pos.as_array().iter().map(|&&b| Val::Bool(b)).collect()))
        .field("negative_agrees", Val::Bool(a.negative_agrees()))
        .field("positive_i", ratfunc(&a.positive_closed.i))
        .field("positive_ii_a", ratfunc(&a.positive_closed.ii_a))
        .field("positive_ii_b", ratfunc(&a.positive_closed.ii_b))
        .field("positive_iii", ratfunc(&a.positive_closed.iii))
        .field("negative", ratfunc(&a.negative_closed));
    let mut t = Table::new("coefficients", &["k", "i", "ii_a", "ii_b", "iii", "negative", "agree"]);
    let pc = &a.positive_closed_coeffs;
    for k in 0..a.order {
        let agree = pc.as_array().iter().zip(a.positive_direct.as_array()).all(|(c, d)| c[k] == d[k])
            && a.negative_closed_coeffs[k] == a.negative_direct[k];
        t.push(vec![
            Val::int(k as u64 + 1),
            Val::Rat(pc.i[k].clone()),
            Val::Rat(pc.ii_a[k].clone()),
            Val::Rat(pc.ii_b[k].clone()),
            Val::Rat(pc.iii[k].clone()),
            Val::Rat(a.negative_closed_coeffs[k].clone()),
            Val::Bool(agree),
        ]);
    }
    r.table(t);
    r.set_ok(a.all_agree());
    Ok(r)
}

fn euler(curve: &str, rank: u32, s: &str, bound: u64, conv: &str) -> Result<Report> {
    let mut r = Report::new("euler");
    let (a, b) = parse_curve(curve)?;
    let c = GlobalCurve::new(a, b)?;
    let conv = convention(conv)?;
    let s = parse_complex(s)?;
    let e = global_na_zeta_partial(&c, rank, s, bound, conv)?;
    r.field("a", Val::int(a))
        .field("b", Val::int(b))
        .field("rank", Val::int(rank))
        .field("convention", Val::Str(conv.name().into()))
        .field("s", Val::complex(s))
        .field("bound", Val::int(bound))
        .field("value", Val::complex(e.value))
        .field("log_value", Val::complex(e.log_value))
        .field("log_tail_bound", Val::Real(e.log_tail_bound))
        .field("good_primes", Val::int(e.good_primes as u64))
        .field("bad_primes", Val::List(e.bad_primes.iter().map(|&p| Val::int(p)).collect()));
    Ok(r)
}

fn lattice_report(a: &LatticeArgs) -> Result<Report> {
    let mut r = Report::new("lattice");
    let l = lattice(a)?;
    let h = hn_filtration(&l)?;
    r.field("rank", Val::int(l.rank() as u64))
        .field("covol2", Val::Rat(l.covol2()))
        .field("deg", Val::Real(l.deg()))
        .field("integral", Val::Bool(l.is_integral()))
        .field("semistable", Val::Bool(is_semistable(&l)?))
        .field("stable", Val::Bool(is_stable(&l)?));
    if l.is_integral() && l.covol2() == rat(1, 1) {
        r.field("unimodular_semistable", Val::Bool(unimodular_semistable_check(&l)?));
    }
    if l.rank() == 2 {
        let red = reduce_rank2(&l)?;
        r.field("reduction_a", Val::Real(red.a))
            .field("reduction_b", Val::Real(red.b))
            .field("reduction_in_domain", Val::Bool(red.in_domain))
            .field("reduced_gram", Val::List(red.gram.iter().cloned().map(Val::Rat).collect()));
    }
    let mut t = Table::new("harder_narasimhan", &["step", "rank", "covol2", "slope"]);
    for (i, st) in h.steps.iter().enumerate() {
        t.push(vec![Val::int(i as u64 + 1), Val::int(st.rank as u64), Val::Rat(st.covol2.clone()), Val::Real(st.slope)]);
    }
    r.table(t);
    Ok(r)
}

fn theta(a: &LatticeArgs, tol: f64) -> Result<Report> {
    let mut r = Report::new("theta");
    let l = lattice(a)?;
    let rr = rr_check(&l, tol)?;
    r.field("rank", Val::int(l.rank() as u64))
        .field("covol2", Val::Rat(l.covol2()))
        .field("h0", Val::Real(rr.h0))
        .field("h1", Val::Real(rr.h1))
        .field("deg", Val::Real(rr.deg))
        .field("residual", Val::Real(rr.residual))
        .field("tail_bound", Val::Real(rr.tail_bound));
    r.set_ok(rr.ok);
    Ok(r)
}

fn xi(points: &[String], eps: f64) -> Result<Report> {
    let mut r = Report::new("xi");
    let pts: Vec<Complex64> = points.iter().map(|s| parse_complex(s)).collect::<Result<_>>()?;
    let rows: Vec<Vec<Val>> = pts
        .par_iter()
        .map(|&s| {
            let v = xi_q(s, eps)?;
            let w = xi_q(1.0 - s, eps)?;
            Ok(vec![Val::Real(s.re), Val::Real(s.im), Val::Real(v.re), Val::Real(v.im), Val::Real((v - w).norm())])
        })
        .collect::<Result<_>>()?;
    r.field("eps", Val::Real(eps));
    let mut t = Table::new("values", &["re_s", "im_s", "re_xi", "im_xi", "fe_residual"]);
    rows.into_iter().for_each(|row| t.push(row));
    r.table(t);
    Ok(r)
}

fn explicit_ff(
    c: &CurveArgs,
    q: Option<u64>,
    genus: Option<usize>,
    counts: &Option<String>,
    seed: u64,
    count: usize,
    span: i64,
) -> Result<Report> {
    let mut r = Report::new("explicit-ff");
    if !(0..=12).contains(&span) {
        return Err(Error::Invalid(format!("--span {span} outside 0..=12")));
    }
    let z = artin_data(c, q, genus, counts, &mut r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<FFTestFn> = (0..count)
        .map(|_| {
            let (lo, hi) = (rng.gen_range(-span..=0), rng.gen_range(0..=span));
            FFTestFn::new(z.q(), (lo..=hi).map(|n| (n, rat(rng.gen_range(-6..=6), rng.gen_range(1..=4)))))
        })
        .collect();
    let rows: Vec<Vec<Val>> = fs
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            let formula = ff_explicit_formula_check(&z, f)?;
            let pos = ff_positivity(&z, f)?;
            let hodge = ff_hodge_defect(&z, f)?;
            let equal = pos == hodge;
            let lo = f.support().map(|(n, _)| n).min().unwrap_or(0);
            let hi = f.support().map(|(n, _)| n).max().unwrap_or(0);
            Ok(vec![
                Val::int(i as u64),
                Val::int(lo),
                Val::int(hi),
                Val::Bool(formula),
                Val::Rat(pos),
                Val::Rat(hodge),
                Val::Bool(equal),
            ])
        })
        .collect::<Result<_>>()?;
    let ok = rows.iter().all(|row| row[3] == Val::Bool(true) && row[6] == Val::Bool(true));
    r.field("genus", Val::int(z.g())).field("seed", Val::int(seed)).field("count", Val::int(count as u64));
    let mut t = Table::new("trials", &["trial", "lo", "hi", "explicit_formula", "positivity", "hodge_defect", "equal"]);
    rows.into_iter().for_each(|row| t.push(row));
    r.table(t);
    r.set_ok(ok);
    Ok(r)
}

fn explicit_nf(
    zeros: &std::path::Path,
    ks: &str,
    mu: f64,
    sigma: f64,
    mu2: Option<f64>,
    sigma2: Option<f64>,
    prime_bound: u64,
) -> Result<Report> {
    let mut r = Report::new("explicit-nf");
    let table = load_zeros(zeros)?;
    let ks: Vec<usize> = parse_u64_list(ks)?.into_iter().map(|k| k as usize).collect();
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Invalid("truncation levels must be positive".into()));
    }
    let f = NFTestFn::new(mu, sigma)?;
    let g = NFTestFn::new(mu2.unwrap_or(mu), sigma2.unwrap_or(sigma))?;
    let quad = QuadSpec::default();
    let kmax = *ks.iter().max().expect("nonempty");
    let model = MicroModel::new(&table, kmax)?;
    let gp = global_pairing(&model, &f, &g, &quad)?;
    let rows: Vec<Vec<Val>> = ks
        .par_iter()
        .map(|&k| {
            let w = riemann_weil_residual(&f, &table, k, prime_bound, &quad)?;
            Ok(vec![
                Val::int(k as u64),
                Val::Real(w.zero_sum),
                Val::Real(w.poles),
                Val::Real(w.prime_sum),
                Val::Real(w.archimedean),
                Val::Real(w.residual),
            ])
        })
        .collect::<Result<_>>()?;
    let res: Vec<f64> = rows
        .iter()
        .map(|row| match row[5] {
            Val::Real(x) => x.abs(),
            _ => unreachable!(),
        })
        .collect();
    let monotone = res.windows(2).all(|w| w[1] <= w[0] || w[1] < 1e-6);
    r.field("zeros", Val::int(table.len() as u64))
        .field("mu", Val::Real(mu))
        .field("sigma", Val::Real(sigma))
        .field("prime_bound", Val::int(prime_bound))
        .field("pairing_k", Val::int(kmax as u64))
        .field("d0", Val::Real(gp.d0))
        .field("d_inf", Val::Real(gp.d_inf))
        .field("d1", Val::Real(gp.d1))
        .field("fg", Val::Real(gp.fg))
        .field("deg1_residual", Val::Real(gp.deg1_residual))
        .field("deg2_residual", Val::Real(gp.deg2_residual))
        .field("fixed_point_residual", Val::Real(gp.fixed_point_residual))
        .field("explicit_residual", Val::Real(gp.explicit_residual))
        .field("residual_monotone", Val::Bool(monotone));
    let mut t = Table::new("riemann_weil", &["K", "zero_sum", "poles", "prime_sum", "archimedean", "residual"]);
    rows.into_iter().for_each(|row| t.push(row));
    r.table(t);
    Ok(r)
}

fn andrianov() -> Report {
    let mut r = Report::new("andrianov");
    let (l, l2) = andrianov_substitution();
    let ok = andrianov_formal_match();
    r.field("lambda_p", Val::Str(format!("{l:?}")))
        .field("lambda_p2", Val::Str(format!("{l2:?}")))
        .field("spinor", Val::Str(format!("{:?}", spinor_numerator(2, &l, &l2))))
        .field("rank2_numerator", Val::Str(format!("{:?}", rank2_numerator_bipoly())))
        .field("match", Val::Bool(ok));
    r.set_ok(ok);
    r
}
