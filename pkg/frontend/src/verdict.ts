/** Reader for the simulator's verdict.txt check files. */

export class VerdictError extends Error {}

/** key=value lines, values kept verbatim as written by the simulator. */
export type Verdict = Map<string, string>;

export function parseVerdict(text: string): Verdict {
  const out: Verdict = new Map();
  for (const raw of text.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line) continue;
    const eq = line.indexOf("=");
    if (eq <= 0) {
      throw new VerdictError(`malformed verdict line: ${JSON.stringify(line)}`);
    }
    out.set(line.slice(0, eq), line.slice(eq + 1));
  }
  if (!out.has("overall")) {
    throw new VerdictError('verdict file has no "overall" line');
  }
  return out;
}

/** The temperature-fit overlay parameters (a, alpha), verbatim strings. */
export function temperatureOverlay(
  verdict: Verdict,
): { a: string; alpha: string } {
  const a = verdict.get("temperature_fit_r2.a");
  const alpha = verdict.get("temperature_fit_r2.alpha");
  if (a === undefined || alpha === undefined) {
    throw new VerdictError("verdict file lacks temperature fit parameters");
  }
  return { a, alpha };
}
