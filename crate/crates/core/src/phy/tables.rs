//! Embedded simulated-performance tables and their override loaders.
//!
//! The embedded data are transcriptions of detector/decoder simulation
//! campaigns: required SNR per MCS at 10% BLER, frames to cell-search
//! success, preamble repetition requirements, and the static anchor-carrier
//! overhead. Users can substitute their own curves through plain CSV files
//! (see [`PerformanceTables::load_dir`]); the file schemas are documented in
//! the README.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Repetition counts covered by the MCS table columns.
pub const MCS_REPETITIONS: [u16; 5] = [1, 2, 4, 8, 16];
/// Number of MCS rows (I_TBS indices 0..=13).
pub const MCS_ROWS: usize = 14;

/// Required SNR (dB) at 10% BLER per (I_TBS, repetitions) operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct McsTable {
    /// `cells[itbs][rep_index]`, rep_index following [`MCS_REPETITIONS`].
    pub cells: [[f64; 5]; MCS_ROWS],
}

impl Default for McsTable {
    fn default() -> Self {
        McsTable {
            cells: [
                [-5.8, -8.3, -10.6, -12.8, -14.7],
                [-4.9, -7.2, -9.7, -11.9, -13.8],
                [-3.9, -6.2, -8.8, -11.0, -12.9],
                [-3.0, -5.4, -8.0, -10.4, -12.2],
                [-2.0, -4.6, -7.2, -9.6, -11.4],
                [-1.1, -3.7, -6.3, -8.9, -10.8],
                [-0.2, -2.8, -5.6, -8.0, -10.0],
                [0.7, -1.9, -4.7, -7.3, -9.3],
                [1.4, -1.3, -4.1, -6.8, -8.9],
                [2.2, -0.4, -3.3, -6.0, -8.1],
                [3.1, 0.4, -2.4, -5.2, -7.3],
                [4.2, 1.4, -1.5, -4.3, -6.6],
                [5.5, 2.7, -0.4, -3.3, -5.6],
                [6.9, 3.9, 0.9, -2.0, -4.4],
            ],
        }
    }
}

impl McsTable {
    pub fn required_snr_db(&self, itbs: u8, repetitions: u16) -> Option<f64> {
        let rep_idx = MCS_REPETITIONS.iter().position(|r| *r == repetitions)?;
        self.cells.get(itbs as usize).map(|row| row[rep_idx])
    }

    /// Lowest requirement anywhere in the table; below it nothing decodes.
    pub fn min_required_snr_db(&self) -> f64 {
        self.cells.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// Rows strictly decreasing in repetitions, columns strictly increasing
    /// in I_TBS.
    pub fn validate(&self) -> Result<()> {
        for (i, row) in self.cells.iter().enumerate() {
            for w in row.windows(2) {
                if w[1] >= w[0] {
                    return Err(Error::TableFormat {
                        file: "mcs".into(),
                        msg: format!("row {i} is not strictly decreasing in repetitions"),
                    });
                }
            }
        }
        for col in 0..5 {
            for i in 1..MCS_ROWS {
                if self.cells[i][col] <= self.cells[i - 1][col] {
                    return Err(Error::TableFormat {
                        file: "mcs".into(),
                        msg: format!("column {col} is not strictly increasing in I_TBS"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Channel models of the cell-search campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellSearchChannel {
    Los,
    Ncu,
    Ndh,
}

impl CellSearchChannel {
    pub const ALL: [CellSearchChannel; 3] =
        [CellSearchChannel::Los, CellSearchChannel::Ncu, CellSearchChannel::Ndh];

    pub fn label(self) -> &'static str {
        match self {
            CellSearchChannel::Los => "los",
            CellSearchChannel::Ncu => "ncu",
            CellSearchChannel::Ndh => "ndh",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "los" => Some(CellSearchChannel::Los),
            "ncu" => Some(CellSearchChannel::Ncu),
            "ndh" => Some(CellSearchChannel::Ndh),
            _ => None,
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|m| *m == self).unwrap()
    }
}

/// Residual-Doppler conditions of the cell-search campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DopplerCase {
    /// 28.4 kHz offset with 306 Hz/s rate.
    HighOffset,
    /// No offset, 580 Hz/s rate.
    HighRate,
    /// No offset, no rate.
    Static,
}

impl DopplerCase {
    pub const ALL: [DopplerCase; 3] =
        [DopplerCase::HighOffset, DopplerCase::HighRate, DopplerCase::Static];

    pub fn label(self) -> &'static str {
        match self {
            DopplerCase::HighOffset => "high_offset",
            DopplerCase::HighRate => "high_rate",
            DopplerCase::Static => "static",
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|c| *c == self).unwrap()
    }
}

/// SNR grid of the cell-search table, ascending, dB.
pub const CELL_SEARCH_SNR_GRID: [f64; 5] = [-10.0, -7.0, -4.0, 0.0, 5.0];

/// Frames (10 ms each) to cell-search success per (model, SNR, Doppler case).
#[derive(Debug, Clone, PartialEq)]
pub struct CellSearchTable {
    /// `frames[model][snr_index][case]`, snr_index following
    /// [`CELL_SEARCH_SNR_GRID`].
    pub frames: [[[u32; 3]; 5]; 3],
}

impl Default for CellSearchTable {
    fn default() -> Self {
        CellSearchTable {
            frames: [
                // LOS
                [[532, 414, 426], [30, 26, 28], [4, 4, 4], [2, 2, 2], [2, 2, 2]],
                // NCU
                [[3110, 3350, 2450], [64, 60, 50], [10, 8, 8], [2, 2, 2], [2, 2, 2]],
                // NDH
                [[586, 490, 436], [42, 40, 34], [8, 8, 8], [4, 4, 4], [2, 2, 2]],
            ],
        }
    }
}

impl CellSearchTable {
    pub fn frames_at_grid(
        &self,
        model: CellSearchChannel,
        snr_index: usize,
        case: DopplerCase,
    ) -> u32 {
        self.frames[model.index()][snr_index][case.index()]
    }

    /// Requirements must not grow with SNR along each (model, case) column.
    pub fn validate(&self) -> Result<()> {
        for model in CellSearchChannel::ALL {
            for case in DopplerCase::ALL {
                for i in 1..CELL_SEARCH_SNR_GRID.len() {
                    let lower = self.frames_at_grid(model, i - 1, case);
                    let upper = self.frames_at_grid(model, i, case);
                    if upper > lower {
                        return Err(Error::TableFormat {
                            file: "cell_search".into(),
                            msg: format!(
                                "frames increase with SNR for {} / {}",
                                model.label(),
                                case.label()
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Channel models of the preamble-reception campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RapChannel {
    Awgn,
    Ncu,
    Ndh,
}

impl RapChannel {
    pub const ALL: [RapChannel; 3] = [RapChannel::Awgn, RapChannel::Ncu, RapChannel::Ndh];

    pub fn label(self) -> &'static str {
        match self {
            RapChannel::Awgn => "awgn",
            RapChannel::Ncu => "ncu",
            RapChannel::Ndh => "ndh",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "awgn" => Some(RapChannel::Awgn),
            "ncu" => Some(RapChannel::Ncu),
            "ndh" => Some(RapChannel::Ndh),
            _ => None,
        }
    }

    fn index(self) -> usize {
        Self::ALL.iter().position(|m| *m == self).unwrap()
    }
}

/// SNR grid of the preamble table, ascending, dB.
pub const RAP_SNR_GRID: [f64; 5] = [-12.0, -10.0, -7.0, -4.0, 0.0];

/// Preamble repetitions plus residual detection-failure percentage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RapCell {
    pub repetitions: u32,
    pub failure_pct: f64,
}

/// Repetition requirements for preamble reception per (SNR, model).
#[derive(Debug, Clone, PartialEq)]
pub struct RapTable {
    /// `cells[snr_index][model]`, snr_index following [`RAP_SNR_GRID`].
    pub cells: [[RapCell; 3]; 5],
}

impl Default for RapTable {
    fn default() -> Self {
        let c = |repetitions, failure_pct| RapCell { repetitions, failure_pct };
        RapTable {
            cells: [
                [c(128, 8.0), c(128, 0.0), c(128, 13.0)], // -12 dB
                [c(128, 0.0), c(62, 0.0), c(128, 0.0)],   // -10 dB
                [c(32, 0.0), c(8, 0.0), c(32, 0.0)],      // -7 dB
                [c(8, 0.0), c(4, 0.0), c(8, 0.0)],        // -4 dB
                [c(2, 0.0), c(1, 0.0), c(2, 0.0)],        // 0 dB
            ],
        }
    }
}

impl RapTable {
    pub fn cell_at_grid(&self, snr_index: usize, model: RapChannel) -> RapCell {
        self.cells[snr_index][model.index()]
    }

    pub fn validate(&self) -> Result<()> {
        for model in RapChannel::ALL {
            for i in 1..RAP_SNR_GRID.len() {
                if self.cell_at_grid(i, model).repetitions
                    > self.cell_at_grid(i - 1, model).repetitions
                {
                    return Err(Error::TableFormat {
                        file: "rap".into(),
                        msg: format!("repetitions increase with SNR for {}", model.label()),
                    });
                }
            }
        }
        Ok(())
    }
}

/// One named overhead contribution, percent of the carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct OverheadComponent {
    pub name: String,
    pub overhead_pct: f64,
}

/// Static overhead on the anchor carrier, split by direction.
#[derive(Debug, Clone, PartialEq)]
pub struct OverheadTable {
    pub dl: Vec<OverheadComponent>,
    pub ul: Vec<OverheadComponent>,
    pub dl_total_pct: f64,
    pub ul_total_pct: f64,
}

impl Default for OverheadTable {
    fn default() -> Self {
        let item = |name: &str, overhead_pct: f64| OverheadComponent { name: name.into(), overhead_pct };
        OverheadTable {
            dl: vec![
                item("npss_nsss", 15.0),
                item("nrs", 4.0),
                item("npbch", 9.52),
                item("nb_sib1", 4.76),
                item("nb_sibx", 8.0),
                item("pdcch", 18.15),
            ],
            ul: vec![item("prach", 28.0), item("dmrs", 10.29)],
            dl_total_pct: 59.42,
            ul_total_pct: 38.29,
        }
    }
}

impl OverheadTable {
    /// Totals must match the component sums to 0.01 percentage points.
    pub fn validate(&self) -> Result<()> {
        let check = |components: &[OverheadComponent], total: f64, dir: &str| {
            let sum: f64 = components.iter().map(|c| c.overhead_pct).sum();
            if (sum - total).abs() > 0.01 + 1e-9 {
                return Err(Error::TableFormat {
                    file: "overhead".into(),
                    msg: format!("{dir} components sum to {sum} but total is {total}"),
                });
            }
            Ok(())
        };
        check(&self.dl, self.dl_total_pct, "DL")?;
        check(&self.ul, self.ul_total_pct, "UL")
    }
}

/// Externally supplied map from SNR to the master-information-block
/// repetitions needed on top of cell search. No curve is embedded; the
/// decoder campaign behind it publishes no numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct MibDecoderCurve {
    /// (snr_db, repetitions), ascending in SNR.
    points: Vec<(f64, u32)>,
}

impl MibDecoderCurve {
    pub fn new(mut points: Vec<(f64, u32)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TableFormat { file: "mib".into(), msg: "curve is empty".into() });
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for w in points.windows(2) {
            if w[1].1 > w[0].1 {
                return Err(Error::TableFormat {
                    file: "mib".into(),
                    msg: "repetitions must be non-increasing in SNR".into(),
                });
            }
        }
        Ok(MibDecoderCurve { points })
    }

    /// Repetitions at the greatest grid SNR not above the query; below the
    /// grid the requirement of the lowest point applies.
    pub fn repetitions_at(&self, snr_db: f64) -> u32 {
        let mut reps = self.points[0].1;
        for (grid, r) in &self.points {
            if snr_db >= *grid {
                reps = *r;
            } else {
                break;
            }
        }
        reps
    }
}

/// The full set of performance tables a run consumes.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PerformanceTables {
    pub mcs: McsTable,
    pub cell_search: CellSearchTable,
    pub rap: RapTable,
    pub overhead: OverheadTable,
    pub mib: Option<MibDecoderCurve>,
}

impl PerformanceTables {
    pub fn validate(&self) -> Result<()> {
        self.mcs.validate()?;
        self.cell_search.validate()?;
        self.rap.validate()?;
        self.overhead.validate()
    }

    /// Loads overrides from a directory. Each file is optional; a missing
    /// file keeps the embedded table. Recognised names: `mcs.csv`,
    /// `cell_search.csv`, `rap.csv`, `overhead.csv`, `mib.csv`.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        let mut tables = PerformanceTables::default();
        let mcs = dir.join("mcs.csv");
        if mcs.is_file() {
            tables.mcs = parse_mcs_csv(&read(&mcs)?)?;
        }
        let cs = dir.join("cell_search.csv");
        if cs.is_file() {
            tables.cell_search = parse_cell_search_csv(&read(&cs)?)?;
        }
        let rap = dir.join("rap.csv");
        if rap.is_file() {
            tables.rap = parse_rap_csv(&read(&rap)?)?;
        }
        let overhead = dir.join("overhead.csv");
        if overhead.is_file() {
            tables.overhead = parse_overhead_csv(&read(&overhead)?)?;
        }
        let mib = dir.join("mib.csv");
        if mib.is_file() {
            tables.mib = Some(parse_mib_csv(&read(&mib)?)?);
        }
        tables.validate()?;
        Ok(tables)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .skip(1) // header row
        .map(|l| l.split(',').map(|f| f.trim().to_string()).collect())
        .collect()
}

fn field_f64(file: &str, row: &[String], idx: usize) -> Result<f64> {
    row.get(idx)
        .and_then(|f| f.parse::<f64>().ok())
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::TableFormat {
            file: file.into(),
            msg: format!("expected a finite number in column {idx} of row {row:?}"),
        })
}

fn field_u32(file: &str, row: &[String], idx: usize) -> Result<u32> {
    row.get(idx)
        .and_then(|f| f.parse::<u32>().ok())
        .ok_or_else(|| Error::TableFormat {
            file: file.into(),
            msg: format!("expected an integer in column {idx} of row {row:?}"),
        })
}

/// `itbs,reps_1,reps_2,reps_4,reps_8,reps_16` with one row per I_TBS 0..=13.
fn parse_mcs_csv(text: &str) -> Result<McsTable> {
    let rows = data_rows(text);
    if rows.len() != MCS_ROWS {
        return Err(Error::TableFormat {
            file: "mcs.csv".into(),
            msg: format!("expected {MCS_ROWS} data rows, got {}", rows.len()),
        });
    }
    let mut cells = [[0.0; 5]; MCS_ROWS];
    for row in &rows {
        let itbs = field_u32("mcs.csv", row, 0)? as usize;
        if itbs >= MCS_ROWS {
            return Err(Error::TableFormat {
                file: "mcs.csv".into(),
                msg: format!("I_TBS {itbs} out of range"),
            });
        }
        for (col, cell) in cells[itbs].iter_mut().enumerate() {
            *cell = field_f64("mcs.csv", row, col + 1)?;
        }
    }
    Ok(McsTable { cells })
}

/// `model,snr_db,frames_high_offset,frames_high_rate,frames_static` with one
/// row per (model, grid SNR).
fn parse_cell_search_csv(text: &str) -> Result<CellSearchTable> {
    let mut table = CellSearchTable::default();
    let mut seen = [[false; 5]; 3];
    for row in data_rows(text) {
        let model = CellSearchChannel::parse(&row[0]).ok_or_else(|| Error::TableFormat {
            file: "cell_search.csv".into(),
            msg: format!("unknown model {:?}", row[0]),
        })?;
        let snr = field_f64("cell_search.csv", &row, 1)?;
        let snr_idx = CELL_SEARCH_SNR_GRID
            .iter()
            .position(|g| (g - snr).abs() < 1e-9)
            .ok_or_else(|| Error::TableFormat {
                file: "cell_search.csv".into(),
                msg: format!("SNR {snr} is not on the grid {CELL_SEARCH_SNR_GRID:?}"),
            })?;
        for (k, case) in DopplerCase::ALL.iter().enumerate() {
            table.frames[model.index()][snr_idx][case.index()] =
                field_u32("cell_search.csv", &row, 2 + k)?;
        }
        seen[model.index()][snr_idx] = true;
    }
    if seen.iter().flatten().any(|s| !s) {
        return Err(Error::TableFormat {
            file: "cell_search.csv".into(),
            msg: "missing rows for some (model, SNR) pairs".into(),
        });
    }
    Ok(table)
}

/// `snr_db,awgn_reps,awgn_fail_pct,ncu_reps,ncu_fail_pct,ndh_reps,ndh_fail_pct`.
fn parse_rap_csv(text: &str) -> Result<RapTable> {
    let mut table = RapTable::default();
    let mut seen = [false; 5];
    for row in data_rows(text) {
        let snr = field_f64("rap.csv", &row, 0)?;
        let snr_idx = RAP_SNR_GRID
            .iter()
            .position(|g| (g - snr).abs() < 1e-9)
            .ok_or_else(|| Error::TableFormat {
                file: "rap.csv".into(),
                msg: format!("SNR {snr} is not on the grid {RAP_SNR_GRID:?}"),
            })?;
        for (k, model) in RapChannel::ALL.iter().enumerate() {
            table.cells[snr_idx][model.index()] = RapCell {
                repetitions: field_u32("rap.csv", &row, 1 + 2 * k)?,
                failure_pct: field_f64("rap.csv", &row, 2 + 2 * k)?,
            };
        }
        seen[snr_idx] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::TableFormat {
            file: "rap.csv".into(),
            msg: "missing rows for some grid SNRs".into(),
        });
    }
    Ok(table)
}

/// `direction,component,overhead_pct`; totals are the component sums.
fn parse_overhead_csv(text: &str) -> Result<OverheadTable> {
    let mut dl = Vec::new();
    let mut ul = Vec::new();
    for row in data_rows(text) {
        let pct = field_f64("overhead.csv", &row, 2)?;
        let name = row.get(1).cloned().ok_or_else(|| Error::TableFormat {
            file: "overhead.csv".into(),
            msg: format!("missing component name in row {row:?}"),
        })?;
        let component = OverheadComponent { name, overhead_pct: pct };
        match row[0].to_ascii_lowercase().as_str() {
            "dl" => dl.push(component),
            "ul" => ul.push(component),
            other => {
                return Err(Error::TableFormat {
                    file: "overhead.csv".into(),
                    msg: format!("direction must be dl or ul, got {other:?}"),
                })
            }
        }
    }
    if dl.is_empty() || ul.is_empty() {
        return Err(Error::TableFormat {
            file: "overhead.csv".into(),
            msg: "need at least one component per direction".into(),
        });
    }
    let dl_total_pct = dl.iter().map(|c| c.overhead_pct).sum();
    let ul_total_pct = ul.iter().map(|c| c.overhead_pct).sum();
    Ok(OverheadTable { dl, ul, dl_total_pct, ul_total_pct })
}

/// `snr_db,repetitions`, any number of rows.
fn parse_mib_csv(text: &str) -> Result<MibDecoderCurve> {
    let mut points = Vec::new();
    for row in data_rows(text) {
        points.push((field_f64("mib.csv", &row, 0)?, field_u32("mib.csv", &row, 1)?));
    }
    MibDecoderCurve::new(points)
}
