use std::io::Write;
use std::path::{Path, PathBuf};

use swcnt_core::tables::{
    ChordRatioRow, ARMCHAIR_CHORD_RATIOS, CHIRAL_CHORD_RATIOS, TABLE_TOLERANCE, ZIGZAG_CHORD_RATIOS,
};
use swcnt_core::{
    atom_positions, band_gap, band_structure, brillouin_zone, compute_geometry, k_domain, reciprocal_tube, Branch,
    ChiralSpec, GapClass, TBParams, TubeGeometry,
};

use crate::error::{CliError, CliResult};
use crate::report::{fixed, BandRecord, BzReport, DomainReport, GeometryReport};

pub fn spec(n: i64, m: i64, a: Option<f64>) -> CliResult<ChiralSpec> {
    Ok(match a {
        Some(a) => ChiralSpec::with_lattice_constant(n, m, a)?,
        None => ChiralSpec::new(n, m)?,
    })
}

/// Smallest finite tube (`L = 1`).
pub fn minimal_geometry(spec: &ChiralSpec) -> CliResult<TubeGeometry> {
    Ok(TubeGeometry::with_half_count(spec, 1)?)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn vec3(v: &[f64; 3]) -> String {
    format!("({}, {}, {})", fixed(v[0], 6), fixed(v[1], 6), fixed(v[2], 6))
}

pub fn cmd_geom(n: i64, m: i64, a: Option<f64>, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let geom = minimal_geometry(&spec(n, m, a)?)?;
    let r = GeometryReport::new(&geom);
    if json {
        let text = serde_json::to_string_pretty(&r).expect("report serializes");
        writeln!(out, "{text}")?;
        return Ok(());
    }
    let g = &r.geometry;
    writeln!(out, "SWCNT ({n},{m}) {}", r.class)?;
    writeln!(out, "a:        {:.6} A", r.a)?;
    writeln!(out, "r_t:      {:.6} A", g.r_t)?;
    writeln!(out, "|C_h|:    {:.6} A", g.ch_len)?;
    writeln!(out, "T:        ({}, {})  |T| = {:.6} A  d = {}  d_R = {}", g.t1, g.t2, g.t_len, g.d, g.d_r)?;
    writeln!(out, "theta+:   {:.6} rad   theta-: {:.6} rad", g.theta_plus, g.theta_minus)?;
    writeln!(out, "alpha+:   {:.6} rad   alpha-: {:.6} rad", g.alpha_plus, g.alpha_minus)?;
    writeln!(out, "c+:       {:.6} A     c-:     {:.6} A", g.c_plus, g.c_minus)?;
    writeln!(out, "a+ chord: {:.6} A     a- chord: {:.6} A", g.chord_plus, g.chord_minus)?;
    if (r.ratio_plus - r.ratio_minus).abs() < 1e-12 {
        writeln!(out, "a*: {:.4}", r.ratio_plus)?;
    } else {
        writeln!(out, "a+*: {:.4}", r.ratio_plus)?;
        writeln!(out, "a-*: {:.4}", r.ratio_minus)?;
    }
    writeln!(out, "a_hat+:   {}", vec3(&r.vectors.a_hat_plus))?;
    writeln!(out, "a_hat-:   {}", vec3(&r.vectors.a_hat_minus))?;
    writeln!(out, "r~:       {:.6} 1/A", r.reciprocal.r_tilde)?;
    writeln!(out, "b~+:      {}", vec3(&r.reciprocal.b_tilde_plus))?;
    writeln!(out, "b~-:      {}", vec3(&r.reciprocal.b_tilde_minus))?;
    Ok(())
}

pub fn lattice_xyz(geom: &TubeGeometry) -> String {
    let atoms = atom_positions(geom);
    let mut s = format!("{}\nSWCNT ({},{}) N={}\n", atoms.len(), geom.spec.n, geom.spec.m, geom.n_cells);
    for at in &atoms {
        let [x, y, z] = at.position;
        s.push_str(&format!("C {} {} {}\n", fixed(x, 6), fixed(y, 6), fixed(z, 6)));
    }
    s
}

pub fn cmd_lattice(n: i64, m: i64, cells: usize, a: Option<f64>, path: &Path) -> CliResult<usize> {
    let geom = compute_geometry(&spec(n, m, a)?, cells)?;
    write_file(path, &lattice_xyz(&geom))?;
    Ok(2 * geom.n_cells)
}

pub fn bz_report(geom: &TubeGeometry) -> CliResult<BzReport> {
    let rt = reciprocal_tube(geom);
    let hex = brillouin_zone(&rt)?;
    let domains = [Branch::Plus, Branch::Minus]
        .into_iter()
        .map(|b| {
            let d = k_domain(geom, b);
            let bounds = d.kappa_bounds();
            DomainReport {
                branch: b,
                rotation_only: d.is_rotation_only(),
                kappa_min: bounds.map(|x| x.0),
                kappa_max: bounds.map(|x| x.1),
                tau_min: d.tau_min,
                tau_max: d.tau_max,
            }
        })
        .collect();
    Ok(BzReport {
        n: geom.spec.n,
        m: geom.spec.m,
        class: geom.class,
        vertices: hex.vertices,
        area: hex.area,
        cell_area: rt.cell_area(),
        domains,
    })
}

pub fn cmd_bz(n: i64, m: i64, json: bool, out: &mut dyn Write) -> CliResult<()> {
    let r = bz_report(&minimal_geometry(&spec(n, m, None)?)?)?;
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("report serializes"))?;
        return Ok(());
    }
    writeln!(out, "# SWCNT ({n},{m}) {} Brillouin zone", r.class)?;
    writeln!(out, "vertex,x,z")?;
    for (i, v) in r.vertices.iter().enumerate() {
        writeln!(out, "{i},{},{}", fixed(v[0], 9), fixed(v[1], 9))?;
    }
    writeln!(out, "# area={:.9} cell_area={:.9}", r.area, r.cell_area)?;
    writeln!(out, "branch,kappa_min,kappa_max,tau_min,tau_max")?;
    for d in &r.domains {
        let tag = match d.branch {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        };
        match (d.kappa_min, d.kappa_max) {
            (Some(lo), Some(hi)) => {
                writeln!(
                    out,
                    "{tag},{},{},{},{}",
                    fixed(lo, 9),
                    fixed(hi, 9),
                    fixed(d.tau_min, 9),
                    fixed(d.tau_max, 9)
                )?;
            }
            _ => writeln!(out, "{tag},rotation-only,rotation-only,{},{}", fixed(d.tau_min, 9), fixed(d.tau_max, 9))?,
        }
    }
    Ok(())
}

pub fn load_params(path: Option<&Path>) -> CliResult<TBParams> {
    let Some(path) = path else {
        return Ok(TBParams::default());
    };
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    TBParams::from_json(&text).map_err(|source| CliError::Config { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone)]
pub struct BandsArgs {
    pub n: i64,
    pub m: i64,
    pub l: usize,
    pub order: u8,
    pub params: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn bands_csv(geom: &TubeGeometry, params: &TBParams, l: usize, order: u8) -> CliResult<String> {
    let bands = band_structure(geom, params, l, order)?;
    let mut s = String::from(BandRecord::CSV_HEADER);
    s.push('\n');
    for i in 0..bands.kappas.len() {
        let rec = BandRecord {
            nu: bands.nu[i],
            kappa: bands.kappas[i],
            eps_minus: bands.eps_minus[i],
            eps_plus: bands.eps_plus[i],
        };
        s.push_str(&rec.to_csv());
        s.push('\n');
    }
    let (gap, class) = band_gap(&bands);
    let class = match class {
        GapClass::MetalLike => "metal-like",
        GapClass::Gapped => "gapped",
    };
    s.push_str(&format!("# gap={} eV ({class})\n# gap_kappa={}\n", fixed(gap, 9), fixed(bands.gap_kappa, 9)));
    Ok(s)
}

pub fn cmd_bands(args: &BandsArgs, out: &mut dyn Write) -> CliResult<()> {
    let params = load_params(args.params.as_deref())?;
    let geom = TubeGeometry::with_half_count(&spec(args.n, args.m, None)?, args.l)?;
    let csv = bands_csv(&geom, &params, args.l, args.order)?;
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => Ok(out.write_all(csv.as_bytes())?),
    }
}

pub fn cmd_tables(out: &mut dyn Write) -> CliResult<usize> {
    let mut flagged = 0;
    let sections: [(&str, &[ChordRatioRow]); 3] =
        [("armchair", &ARMCHAIR_CHORD_RATIOS), ("chiral", &CHIRAL_CHORD_RATIOS), ("zigzag", &ZIGZAG_CHORD_RATIOS)];
    for (name, rows) in sections {
        writeln!(out, "# {name}")?;
        writeln!(out, "(n,m)     a+* calc  a+* ref   a-* calc  a-* ref   max|d|")?;
        for r in rows {
            let g = minimal_geometry(&ChiralSpec::new(r.n, r.m)?)?;
            let (p, q) = (g.chord_ratio(Branch::Plus), g.chord_ratio(Branch::Minus));
            let d = (p - r.plus).abs().max((q - r.minus).abs());
            let flag = if d > TABLE_TOLERANCE {
                flagged += 1;
                "  MISMATCH"
            } else {
                ""
            };
            writeln!(
                out,
                "{:<9} {p:.4}    {:.4}    {q:.4}    {:.4}    {d:.1e}{flag}",
                format!("({},{})", r.n, r.m),
                r.plus,
                r.minus
            )?;
        }
    }
    Ok(flagged)
}
