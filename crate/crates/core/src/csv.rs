//! CSV emission.
//!
//! Numbers are written with Rust's shortest round-trip formatting (`{:?}` for
//! `f64`), so parsing a field back yields the exact value that was written.
//! Files are written to a temporary name and renamed into place.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::gainlab::{BerCurve, GainResult};
use crate::linkbudget::watts_to_dbm;
use crate::policy::PolicyTable;
use crate::simkernel::{ComparisonRow, RoundRecord, SchemeSeries};

pub const BER_HEADER: &str = "ebn0_db,ber,bits,errors,codec";
pub const GAIN_HEADER: &str = "codec,target_ber,gain_db,ebn0_uncoded_db,ebn0_coded_db";
pub const DCR_HEADER: &str = "codec,gain_db,decoder_energy_j,critical_distance_m";
pub const SERIES_HEADER: &str = "round,mean_txpower_dbm,mean_saving_j_per_bit,cum_mean_saving_j_per_bit";
pub const COMPARE_HEADER: &str = "scheme,final_net_saving_j_per_bit,rank";
pub const DETAIL_HEADER: &str =
    "round,node,scheme,distance_m,codec,boosted,tx_power_w,energy_uncoded_j,energy_coded_j,saving_j,net_saving_j";

pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn ber_curve(curve: &BerCurve) -> String {
    let mut out = format!("{BER_HEADER}\n");
    for p in &curve.points {
        let _ = writeln!(out, "{},{},{},{},{}", num(p.ebn0_db), num(p.ber), p.bits, p.errors, curve.codec_label);
    }
    out
}

pub fn gains(results: &[GainResult]) -> String {
    let mut out = format!("{GAIN_HEADER}\n");
    for g in results {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            g.codec_label,
            num(g.target_ber),
            num(g.gain_db),
            num(g.ebn0_uncoded_db),
            num(g.ebn0_coded_db)
        );
    }
    out
}

pub fn critical_distances(table: &PolicyTable) -> String {
    let mut out = format!("{DCR_HEADER}\n");
    for e in table.entries() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.profile.label,
            num(e.profile.gain_db),
            num(e.profile.decoder_energy_per_bit),
            num(e.critical_distance.meters())
        );
    }
    out
}

/// Rounds are numbered from 1.
pub fn scheme_series(series: &SchemeSeries) -> String {
    let mut out = format!("{SERIES_HEADER}\n");
    for i in 0..series.mean_tx_power.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            i + 1,
            num(watts_to_dbm(series.mean_tx_power[i])),
            num(series.mean_saving[i]),
            num(series.cum_mean_saving[i])
        );
    }
    out
}

pub fn comparison(rows: &[ComparisonRow]) -> String {
    let mut out = format!("{COMPARE_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.scheme, num(r.final_net_saving), r.rank);
    }
    out
}

pub fn detail(records: &[RoundRecord]) -> String {
    let mut out = format!("{DETAIL_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.round + 1,
            r.node,
            r.scheme,
            num(r.distance),
            r.codec.map_or("none", |c| c.as_str()),
            r.boosted,
            num(r.tx_power),
            num(r.energy_uncoded),
            num(r.energy_coded),
            num(r.saving),
            num(r.net_saving)
        );
    }
    out
}

/// Writes `contents` to `dir/name`, creating `dir` if needed. The data goes
/// to a temporary file first and is renamed into place, so a failed write
/// never leaves a partial file under the final name.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    if let Err(e) = fs::write(&tmp, contents) {
        let _ = fs::remove_file(&tmp);
        return Err(e);
    }
    if let Err(e) = fs::rename(&tmp, &target) {
        let _ = fs::remove_file(&tmp);
        return Err(e);
    }
    Ok(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gainlab::BerPoint;
    use proptest::prelude::*;

    #[test]
    fn ber_csv_layout() {
        let c = BerCurve::new(
            "CC-Soft",
            vec![BerPoint { ebn0_db: 0.5, ber: 0.25, bits: 8, errors: 2 }],
        )
        .unwrap();
        assert_eq!(ber_curve(&c), "ebn0_db,ber,bits,errors,codec\n0.5,0.25,8,2,CC-Soft\n");
    }

    #[test]
    fn atomic_write_creates_dir_and_leaves_no_temp() {
        let dir = std::env::temp_dir().join(format!("adaptecc-csv-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let nested = dir.join("a/b");
        let path = write_atomic(&nested, "x.csv", "h\n1\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "h\n1\n");
        let names: Vec<_> = fs::read_dir(&nested).unwrap().map(|e| e.unwrap().file_name()).collect();
        assert_eq!(names, vec![std::ffi::OsString::from("x.csv")]);
        fs::remove_dir_all(&dir).unwrap();
    }

    proptest! {
        #[test]
        fn numbers_roundtrip_exactly(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            prop_assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn non_finite_roundtrip() {
        assert_eq!(num(f64::INFINITY).parse::<f64>().unwrap(), f64::INFINITY);
        assert_eq!(num(f64::NEG_INFINITY).parse::<f64>().unwrap(), f64::NEG_INFINITY);
    }
}
