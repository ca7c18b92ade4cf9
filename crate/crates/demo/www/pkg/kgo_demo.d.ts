/* tslint:disable */
/* eslint-disable */

/**
 * A sampled curve.
 */
export class Curve {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Energy the curve was computed at (NaN for spectrum curves).
     */
    readonly energy: number;
    readonly xs: Float64Array;
    readonly ys: Float64Array;
}

/**
 * Positive-branch energies along `param` for each family value, flattened
 * family-major: `steps` values per family member, NaN where no root exists.
 */
export function energy_curves(config: string, param: string, from: number, to: number, steps: number, family: string, family_values: Float64Array, n: number, l: number, k: number): Float64Array;

/**
 * Finite-difference eigenfunction with `nodes` radial nodes, evaluated at the
 * analytic energy of polynomial degree `2 * nodes`.
 */
export function oracle_profile(config: string, nodes: number, l: number, k: number): Curve;

/**
 * Normalized analytic radial wavefunction `s(r)` of the positive-branch
 * state.
 */
export function wavefunction(config: string, n: number, l: number, k: number, points: number): Curve;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curve_free: (a: number, b: number) => void;
    readonly curve_energy: (a: number) => number;
    readonly curve_xs: (a: number) => [number, number];
    readonly curve_ys: (a: number) => [number, number];
    readonly energy_curves: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number, k: number, l: number, m: number, n: number) => [number, number, number, number];
    readonly oracle_profile: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly wavefunction: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
