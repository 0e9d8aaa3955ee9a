/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solitonsim_free: (a: number, b: number) => void;
export const cayley_phase_defects: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const plane_wave_temporal_errors: (a: number, b: number) => [number, number, number, number];
export const solitonsim_abs_u: (a: number) => [number, number];
export const solitonsim_last_fp_iters: (a: number) => number;
export const solitonsim_new: (a: number, b: number, c: number) => [number, number, number];
export const solitonsim_nodes: (a: number) => [number, number];
export const solitonsim_rel_energy_drift: (a: number) => number;
export const solitonsim_rel_mass_drift: (a: number) => number;
export const solitonsim_step: (a: number, b: number) => [number, number];
export const solitonsim_step_index: (a: number) => number;
export const solitonsim_time: (a: number) => number;
export const spectrum_magnitudes: (a: number) => [number, number];
export const symbol_multipliers: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
