use qkb_core::sparql::ResultFormat;

/// Picks the result format for an `Accept` header. A missing header or a
/// wildcard selects JSON; `None` means nothing acceptable is supported.
pub fn negotiate(accept: Option<&str>) -> Option<ResultFormat> {
    let Some(accept) = accept.map(str::trim).filter(|a| !a.is_empty()) else {
        return Some(ResultFormat::Json);
    };
    let mut best: Option<(f32, ResultFormat)> = None;
    for range in accept.split(',') {
        let mut parts = range.split(';');
        let media = parts.next().unwrap_or("").trim().to_ascii_lowercase();
        let q = parts
            .filter_map(|p| p.trim().strip_prefix("q=").and_then(|v| v.trim().parse::<f32>().ok()))
            .next()
            .unwrap_or(1.0);
        if q <= 0.0 {
            continue;
        }
        let format = match media.as_str() {
            "*/*" | "application/*" | "application/json" => Some(ResultFormat::Json),
            other => ResultFormat::from_media_type(other),
        };
        if let Some(format) = format {
            if best.is_none_or(|(bq, _)| q > bq) {
                best = Some((q, format));
            }
        }
    }
    best.map(|(_, f)| f)
}
