/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_decision_free: (a: number, b: number) => void;
export const __wbg_get_decision_lower: (a: number) => number;
export const __wbg_get_decision_mu_hat: (a: number) => number;
export const __wbg_get_decision_n: (a: number) => number;
export const __wbg_get_decision_p_value: (a: number) => number;
export const __wbg_get_decision_reject: (a: number) => number;
export const __wbg_get_decision_sigma_hat: (a: number) => number;
export const __wbg_get_decision_statistic: (a: number) => number;
export const __wbg_get_decision_upper: (a: number) => number;
export const __wbg_set_decision_lower: (a: number, b: number) => void;
export const __wbg_set_decision_mu_hat: (a: number, b: number) => void;
export const __wbg_set_decision_n: (a: number, b: number) => void;
export const __wbg_set_decision_p_value: (a: number, b: number) => void;
export const __wbg_set_decision_reject: (a: number, b: number) => void;
export const __wbg_set_decision_sigma_hat: (a: number, b: number) => void;
export const __wbg_set_decision_statistic: (a: number, b: number) => void;
export const __wbg_set_decision_upper: (a: number, b: number) => void;
export const drawAlternative: (a: number, b: number, c: number, d: number, e: bigint) => [number, number, number, number];
export const statistics: (a: number, b: number) => [number, number, number, number];
export const submodelNames: () => [number, number];
export const testDirections: () => [number, number];
export const testNames: () => [number, number];
export const testSample: (a: number, b: number, c: number, d: number, e: number, f: number, g: bigint) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
