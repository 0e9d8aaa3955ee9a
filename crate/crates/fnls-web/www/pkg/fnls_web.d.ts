/* tslint:disable */
/* eslint-disable */

/**
 * Soliton propagation on `[-20, 20]`, advanced interactively step by step.
 */
export class SolitonSim {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * `|u(x_j, t)|` at every node.
     */
    abs_u(): Float64Array;
    last_fp_iters(): number;
    /**
     * `alpha ∈ (1, 2]`, even `n ≥ 4` grid nodes, time step `tau > 0`.
     */
    constructor(alpha: number, n: number, tau: number);
    /**
     * Node positions, for the x-axis.
     */
    nodes(): Float64Array;
    rel_energy_drift(): number;
    rel_mass_drift(): number;
    /**
     * Advance `count` steps.
     */
    step(count: number): void;
    step_index(): number;
    time(): number;
}

/**
 * Per-step phase defect `d_k τ - 2 atan(d_k τ / 2)` of the midpoint rule for
 * every mode, in natural k-order. The defect's τ³ scaling is the visible
 * face of the scheme's second order.
 */
export function cayley_phase_defects(alpha: number, n: number, length: number, tau: number): Float64Array;

/**
 * Temporal convergence study for the plane wave (λ = 4, A = 1, β = -2 on
 * `[-π, π]`, N = 256): integrates to `t_final` for each τ and returns
 * row-major `[tau, linf_error, order]` triples, with `order = NaN` on the
 * first row.
 */
export function plane_wave_temporal_errors(alpha: number, t_final: number): Float64Array;

/**
 * Spectral magnitudes `|û_k|` of the current soliton state — used by the
 * demo to show the resolved spectrum.
 */
export function spectrum_magnitudes(sim: SolitonSim): Float64Array;

/**
 * Multipliers `d_k = |μk|^α` in natural k-order (`k = -n/2 … n/2-1`) on a
 * domain of the given length.
 */
export function symbol_multipliers(alpha: number, n: number, length: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solitonsim_free: (a: number, b: number) => void;
    readonly cayley_phase_defects: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly plane_wave_temporal_errors: (a: number, b: number) => [number, number, number, number];
    readonly solitonsim_abs_u: (a: number) => [number, number];
    readonly solitonsim_last_fp_iters: (a: number) => number;
    readonly solitonsim_new: (a: number, b: number, c: number) => [number, number, number];
    readonly solitonsim_nodes: (a: number) => [number, number];
    readonly solitonsim_rel_energy_drift: (a: number) => number;
    readonly solitonsim_rel_mass_drift: (a: number) => number;
    readonly solitonsim_step: (a: number, b: number) => [number, number];
    readonly solitonsim_step_index: (a: number) => number;
    readonly solitonsim_time: (a: number) => number;
    readonly spectrum_magnitudes: (a: number) => [number, number];
    readonly symbol_multipliers: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
