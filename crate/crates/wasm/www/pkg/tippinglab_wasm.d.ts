/* tslint:disable */
/* eslint-disable */

/**
 * Exact probability that a uniform graph with `n` vertices is a forest, at
 * each density of [`density_axis`]; infeasible densities give NaN.
 */
export function acyclic_curve(n: number, d_min: number, d_max: number, d_step: number): Float64Array;

/**
 * Densities `d_min, d_min + step, …, ≤ d_max` on the micro-unit grid.
 */
export function density_axis(d_min: number, d_max: number, d_step: number): Float64Array;

/**
 * Fraction of `samples` uniform random graphs with `n` vertices that have
 * `property`, at each density of [`density_axis`]. Infeasible densities
 * give NaN. Uses the same seeding as a full sweep, so values agree with the
 * CLI for the same seed and sample count.
 */
export function frequency_curve(property: string, n: number, d_min: number, d_max: number, d_step: number, samples: number, seed: bigint): Float64Array;

/**
 * Row-major `n_steps × d_steps` grid of the model probability; row `i` is
 * the `i`-th of `n_steps` values spaced evenly on a log scale over
 * `[n_min, n_max]`.
 */
export function zeta_grid(c1: number, c2: number, c3: number, c4: number, n_min: number, n_max: number, n_steps: number, d_min: number, d_max: number, d_steps: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly acyclic_curve: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly density_axis: (a: number, b: number, c: number) => [number, number, number, number];
    readonly frequency_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: bigint) => [number, number, number, number];
    readonly zeta_grid: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: number, j: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
