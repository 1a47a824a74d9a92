/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const gap_table: (a: number) => [number, number, number, number];
export const scan_cell: (a: number, b: number, c: number) => [number, number, number, number];
export const witness: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
