/* tslint:disable */
/* eslint-disable */

export function check_names(): string;

/**
 * Runs a named check (or `all`) and returns the reports.
 */
export function run_check(name: string, q_max: number, p_max: number, k: number): string;

export function series_names(): string;

/**
 * Coefficient table of a named series; `k` selects the vertex route.
 */
export function series_table(name: string, q_max: number, p_max: number, k: number | null | undefined, h: number): string;

/**
 * Number of 3D partitions with the given legs, by added boxes `0..=K`.
 */
export function vertex_counts(legs: string, k: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check_names: () => [number, number];
    readonly run_check: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly series_names: () => [number, number];
    readonly series_table: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly vertex_counts: (a: number, b: number, c: number) => [number, number, number, number];
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
