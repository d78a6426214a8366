/** Reader for the simulator's binary .snap distribution snapshots.
 *
 * Layout (little endian): 8-byte magic "RNWYSNAP", u32 version, u32 N,
 * u32 Nx, then nine f64 (extent, center x/y/z, time, bulk V x/y/z,
 * temperature T), then Nx * N^3 f64 lattice values in C order.
 */

export const SNAPSHOT_MAGIC = "RNWYSNAP";
export const SNAPSHOT_VERSION = 1;
const HEADER_BYTES = 8 + 3 * 4 + 9 * 8;

export class SnapshotError extends Error {}

export interface Snapshot {
  n: number;
  nX: number;
  extent: number;
  center: [number, number, number];
  t: number;
  V: [number, number, number];
  T: number;
  /** Nx * N^3 values, C order over (ix, v1, v2, v3). */
  values: Float64Array;
}

export function readSnapshot(buffer: Buffer): Snapshot {
  if (buffer.length < HEADER_BYTES) {
    throw new SnapshotError("snapshot shorter than its header");
  }
  const magic = buffer.subarray(0, 8).toString("latin1");
  if (magic !== SNAPSHOT_MAGIC) {
    throw new SnapshotError(`bad snapshot magic ${JSON.stringify(magic)}`);
  }
  const version = buffer.readUInt32LE(8);
  if (version !== SNAPSHOT_VERSION) {
    throw new SnapshotError(`unsupported snapshot version ${version}`);
  }
  const n = buffer.readUInt32LE(12);
  const nX = buffer.readUInt32LE(16);
  const f = (i: number) => buffer.readDoubleLE(20 + 8 * i);
  const count = nX * n * n * n;
  const expected = HEADER_BYTES + 8 * count;
  if (buffer.length !== expected) {
    throw new SnapshotError(
      `snapshot body has ${buffer.length - HEADER_BYTES} bytes, ` +
      `expected ${8 * count}`,
    );
  }
  const values = new Float64Array(count);
  for (let i = 0; i < count; i += 1) {
    values[i] = buffer.readDoubleLE(HEADER_BYTES + 8 * i);
  }
  return {
    n, nX,
    extent: f(0),
    center: [f(1), f(2), f(3)],
    t: f(4),
    V: [f(5), f(6), f(7)],
    T: f(8),
    values,
  };
}

/** Lattice coordinates along one velocity axis (cell centers, no node at
 * the box midpoint when N is even -- offsets are half-integer). */
export function axisCoords(snap: Snapshot, axis: 0 | 1 | 2): number[] {
  const dv = snap.extent / snap.n;
  const out: number[] = [];
  for (let i = 0; i < snap.n; i += 1) {
    out.push(snap.center[axis] + (i - snap.n / 2 + 0.5) * dv);
  }
  return out;
}

/**
 * Central v1-v2 slice of the first spatial cell: the v3 index whose lab
 * coordinate is closest to the box center. Returns an n-by-n row-major
 * array indexed [i1][i2].
 */
export function centralSlice(snap: Snapshot): number[][] {
  const n = snap.n;
  const coords3 = axisCoords(snap, 2);
  let k = 0;
  for (let i = 1; i < n; i += 1) {
    if (Math.abs(coords3[i] - snap.center[2])
        < Math.abs(coords3[k] - snap.center[2])) {
      k = i;
    }
  }
  const slice: number[][] = [];
  for (let i1 = 0; i1 < n; i1 += 1) {
    const row: number[] = [];
    for (let i2 = 0; i2 < n; i2 += 1) {
      row.push(snap.values[(i1 * n + i2) * n + k]);
    }
    slice.push(row);
  }
  return slice;
}
