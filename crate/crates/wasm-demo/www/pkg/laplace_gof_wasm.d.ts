/* tslint:disable */
/* eslint-disable */

/**
 * Outcome of one Monte Carlo test.
 */
export class Decision {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * NaN when the region has no lower bound.
     */
    lower: number;
    mu_hat: number;
    n: number;
    p_value: number;
    reject: boolean;
    sigma_hat: number;
    statistic: number;
    /**
     * NaN when the region has no upper bound.
     */
    upper: number;
}

export function drawAlternative(submodel: string, case_index: number, n: number, seed: bigint): Float64Array;

export function statistics(text: string): Float64Array;

export function submodelNames(): string[];

/**
 * `upper`, `lower` or `two-sided`, in test order.
 */
export function testDirections(): string[];

export function testNames(): string[];

export function testSample(text: string, test: string, alpha: number, reps: number, seed: bigint): Decision;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_decision_free: (a: number, b: number) => void;
    readonly __wbg_get_decision_lower: (a: number) => number;
    readonly __wbg_get_decision_mu_hat: (a: number) => number;
    readonly __wbg_get_decision_n: (a: number) => number;
    readonly __wbg_get_decision_p_value: (a: number) => number;
    readonly __wbg_get_decision_reject: (a: number) => number;
    readonly __wbg_get_decision_sigma_hat: (a: number) => number;
    readonly __wbg_get_decision_statistic: (a: number) => number;
    readonly __wbg_get_decision_upper: (a: number) => number;
    readonly __wbg_set_decision_lower: (a: number, b: number) => void;
    readonly __wbg_set_decision_mu_hat: (a: number, b: number) => void;
    readonly __wbg_set_decision_n: (a: number, b: number) => void;
    readonly __wbg_set_decision_p_value: (a: number, b: number) => void;
    readonly __wbg_set_decision_reject: (a: number, b: number) => void;
    readonly __wbg_set_decision_sigma_hat: (a: number, b: number) => void;
    readonly __wbg_set_decision_statistic: (a: number, b: number) => void;
    readonly __wbg_set_decision_upper: (a: number, b: number) => void;
    readonly drawAlternative: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number, number];
    readonly statistics: (a: number, b: number) => [number, number, number, number];
    readonly submodelNames: () => [number, number];
    readonly testDirections: () => [number, number];
    readonly testNames: () => [number, number];
    readonly testSample: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
