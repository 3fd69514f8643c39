/// No complete fenced code block in a response.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no fenced code block found in the response; put the complete answer in one ``` block")]
pub struct ExtractionError;

/// Contents of the last complete ```` ``` ```` block, without the fence lines.
/// An info string after the opening fence (`gamescript`, `efg`, ...) is
/// ignored, and an unclosed trailing fence does not count.
pub fn last_code_block(response: &str) -> Result<String, ExtractionError> {
    let mut last = None;
    let mut open: Option<Vec<&str>> = None;
    for line in response.lines() {
        let fence = line.trim_start().starts_with("```");
        match (&mut open, fence) {
            (None, true) => open = Some(Vec::new()),
            (Some(body), true) => {
                last = Some(body.join("\n"));
                open = None;
            }
            (Some(body), false) => body.push(line),
            (None, false) => {}
        }
    }
    last.ok_or(ExtractionError)
}
