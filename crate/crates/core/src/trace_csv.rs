//! CSV form of a [`SimTrace`]: one header line, one row per sample, LF endings.
//! Values use Rust's shortest round-trip float formatting, so reading a
//! written trace recovers it exactly.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::sim::SimTrace;

pub const HEADER: [&str; 9] = ["t", "setpoint", "speed", "control", "error", "derror", "kp", "ki", "kd"];

pub fn write_trace<W: Write>(trace: &SimTrace, mut out: W) -> Result<()> {
    trace.validate()?;
    let io = |e: std::io::Error| Error::Io(e.to_string());
    writeln!(out, "{}", HEADER.join(",")).map_err(io)?;
    let cols = trace.columns();
    let mut line = String::new();
    for k in 0..trace.len() {
        line.clear();
        for (c, col) in cols.iter().enumerate() {
            if c > 0 {
                line.push(',');
            }
            line.push_str(&col[k].to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes()).map_err(io)?;
    }
    out.flush().map_err(io)
}

pub fn trace_to_string(trace: &SimTrace) -> Result<String> {
    let mut buf = Vec::new();
    write_trace(trace, &mut buf)?;
    Ok(String::from_utf8(buf).expect("formatted floats are ASCII"))
}

pub fn read_trace<R: Read>(input: R) -> Result<SimTrace> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let err = |line: u64, message: String| Error::TraceParse {
        line: line as usize,
        message,
    };

    let headers = rdr.headers().map_err(|e| err(1, e.to_string()))?.clone();
    if headers.iter().ne(HEADER.iter().copied()) {
        return Err(err(1, format!("header must be `{}`", HEADER.join(","))));
    }

    let mut trace = SimTrace::default();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let mut row = [0.0_f64; 9];
        for (slot, field) in row.iter_mut().zip(record.iter()) {
            *slot = field
                .parse()
                .map_err(|_| err(line, format!("`{field}` is not a number")))?;
            if !slot.is_finite() {
                return Err(err(line, format!("`{field}` is not finite")));
            }
        }
        let cols = [
            &mut trace.t,
            &mut trace.setpoint,
            &mut trace.speed,
            &mut trace.control,
            &mut trace.error,
            &mut trace.derror,
            &mut trace.kp,
            &mut trace.ki,
            &mut trace.kd,
        ];
        for (col, v) in cols.into_iter().zip(row) {
            col.push(v);
        }
    }
    if trace.is_empty() {
        return Err(Error::InvalidTrace("trace has no rows".into()));
    }
    trace.validate()?;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{run, SimConfig};

    #[test]
    fn round_trip_is_exact() {
        let mut cfg = SimConfig::open_loop();
        cfg.duration = 0.5;
        let trace = run(&cfg).unwrap();
        let text = trace_to_string(&trace).unwrap();
        assert!(text.starts_with("t,setpoint,speed,control,error,derror,kp,ki,kd\n0,2000,0,2000,2000,0,0,0,0\n"));
        assert!(!text.contains('\r'));
        assert_eq!(read_trace(text.as_bytes()).unwrap(), trace);
    }

    #[test]
    fn reports_line_of_bad_field() {
        let text = "t,setpoint,speed,control,error,derror,kp,ki,kd\n0,1,0,0,1,0,0,0,0\n0.1,1,x,0,1,0,0,0,0\n";
        match read_trace(text.as_bytes()) {
            Err(Error::TraceParse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_shapes() {
        assert!(read_trace("a,b\n1,2\n".as_bytes()).is_err());
        assert!(read_trace("t,setpoint,speed,control,error,derror,kp,ki,kd\n".as_bytes()).is_err());
        let short = "t,setpoint,speed,control,error,derror,kp,ki,kd\n0,1,0\n";
        assert!(read_trace(short.as_bytes()).is_err());
        let backwards = "t,setpoint,speed,control,error,derror,kp,ki,kd\n1,1,0,0,1,0,0,0,0\n0,1,0,0,1,0,0,0,0\n";
        assert!(read_trace(backwards.as_bytes()).is_err());
        let inf = "t,setpoint,speed,control,error,derror,kp,ki,kd\n0,inf,0,0,1,0,0,0,0\n";
        assert!(read_trace(inf.as_bytes()).is_err());
    }
}
