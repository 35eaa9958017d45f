//! Commands behind the `pcert` binary. Each returns the process exit status
//! and writes diagnostics to `err`.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use pcert_core::inverse::roundtrip_development;
use pcert_core::syntax::lambdapi::{export_lambdapi, ExportError, ExportMode};
use pcert_core::syntax::{parse_file, print_file, Development, Mode};
use pcert_core::{check_development, translate_development, Diagnostic, Fuel};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    TypeError = 1,
    /// Unreadable input, syntax errors and inputs in the wrong mode.
    ParseError = 2,
    FuelExhausted = 3,
    ProtectedSymbol = 4,
    RoundTripFailure = 5,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

impl fmt::Display for ExitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

fn status_of(d: &Diagnostic) -> ExitStatus {
    if d.is_fuel_exhausted() {
        ExitStatus::FuelExhausted
    } else if d.is_protected_symbol() {
        ExitStatus::ProtectedSymbol
    } else {
        ExitStatus::TypeError
    }
}

fn report(err: &mut dyn Write, d: &Diagnostic) -> ExitStatus {
    let _ = writeln!(err, "error: {d}");
    status_of(d)
}

fn load(path: &Path, err: &mut dyn Write) -> Result<Development, ExitStatus> {
    let src = fs::read_to_string(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        ExitStatus::ParseError
    })?;
    parse_file(&src, &path.display().to_string()).map_err(|e| {
        let _ = writeln!(err, "error: {e}");
        ExitStatus::ParseError
    })
}

fn load_pcert(path: &Path, err: &mut dyn Write) -> Result<Development, ExitStatus> {
    let dev = load(path, err)?;
    if dev.mode != Mode::Pcert {
        let _ = writeln!(err, "error: {} is a {} file, expected pcert", path.display(), dev.mode);
        return Err(ExitStatus::ParseError);
    }
    Ok(dev)
}

fn store(out: &Path, text: &str, err: &mut dyn Write) -> ExitStatus {
    match fs::write(out, text) {
        Ok(()) => ExitStatus::Ok,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write {}: {e}", out.display());
            ExitStatus::ParseError
        }
    }
}

fn run(r: Result<ExitStatus, ExitStatus>) -> ExitStatus {
    r.unwrap_or_else(|s| s)
}

/// Checks a file of either mode.
pub fn cmd_check(path: &Path, fuel: Fuel, err: &mut dyn Write) -> ExitStatus {
    run((|| {
        let dev = load(path, err)?;
        check_development(&dev, fuel).map_err(|d| report(err, &d))?;
        Ok(ExitStatus::Ok)
    })())
}

/// Translates a pcert file; the output is checked in lf mode before it is
/// written.
pub fn translate_checked(dev: &Development, fuel: Fuel, err: &mut dyn Write) -> Result<Development, ExitStatus> {
    let lf = translate_development(dev, fuel).map_err(|d| report(err, &d))?;
    // the printed text is what gets checked, so reparse it
    let text = print_file(&lf);
    let reparsed = parse_file(&text, "<translation>").map_err(|e| {
        let _ = writeln!(err, "error: translation does not reparse: {e}");
        ExitStatus::ParseError
    })?;
    check_development(&reparsed, fuel).map_err(|d| {
        let _ = writeln!(err, "error: translation does not check in lf mode");
        report(err, &d)
    })?;
    Ok(reparsed)
}

pub fn cmd_translate(path: &Path, out: &Path, fuel: Fuel, err: &mut dyn Write) -> ExitStatus {
    run((|| {
        let dev = load_pcert(path, err)?;
        let lf = translate_checked(&dev, fuel, err)?;
        Ok(store(out, &print_file(&lf), err))
    })())
}

pub fn cmd_roundtrip(path: &Path, fuel: Fuel, err: &mut dyn Write) -> ExitStatus {
    run((|| {
        let dev = load_pcert(path, err)?;
        let failures = roundtrip_development(&dev, fuel).map_err(|d| report(err, &d))?;
        for f in &failures {
            let _ = writeln!(err, "round trip failed for {}: {}", f.name, f.error);
        }
        Ok(if failures.is_empty() {
            ExitStatus::Ok
        } else {
            ExitStatus::RoundTripFailure
        })
    })())
}

/// Exports to Lambdapi. pcert files are translated first.
pub fn cmd_export(path: &Path, out: &Path, signature: bool, fuel: Fuel, err: &mut dyn Write) -> ExitStatus {
    run((|| {
        let dev = load(path, err)?;
        let dev = match dev.mode {
            Mode::Pcert => translate_checked(&dev, fuel, err)?,
            Mode::Lf => dev,
        };
        let mode = if signature {
            ExportMode::Signature
        } else {
            ExportMode::Development
        };
        let text = export_lambdapi(&dev, mode, fuel).map_err(|e| match e {
            ExportError::UncheckedInput(d) => report(err, &d),
            ExportError::WrongMode(_) => {
                let _ = writeln!(err, "error: {e}");
                ExitStatus::ParseError
            }
        })?;
        Ok(store(out, &text, err))
    })())
}
