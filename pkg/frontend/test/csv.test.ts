import { describe, expect, it } from "vitest";

import { CSV_COLUMNS, CsvFormatError, parseBenchCsv } from "../dist/csv.js";

const HEADER = CSV_COLUMNS.join(",");

describe("parseBenchCsv", () => {
  it("parses well-formed rows", () => {
    const rows = parseBenchCsv(
      `${HEADER}\n` +
        "fusion,1024,uniform,42,8,4096,131072,9000,1234567,true\n" +
        "btree,1024,uniform,42,8,4096,0,30000,2345678,false\n",
    );
    expect(rows).toHaveLength(2);
    expect(rows[0].algo).toBe("fusion");
    expect(rows[0].n).toBe(1024);
    expect(rows[0].node_visits).toBe(4096);
    expect(rows[0].verified).toBe(true);
    expect(rows[1].verified).toBe(false);
  });

  it("accepts a header-only file", () => {
    expect(parseBenchCsv(`${HEADER}\n`)).toEqual([]);
  });

  it("accepts 64-bit seeds", () => {
    const big = "18446744073709551615";
    const rows = parseBenchCsv(
      `${HEADER}\nstd,5,sorted,${big},8,0,0,0,10,true\n`,
    );
    expect(rows[0].seed).toBe(18446744073709551615n);
  });

  it("rejects a foreign header", () => {
    expect(() => parseBenchCsv("a,b,c\n1,2,3\n")).toThrow(CsvFormatError);
  });

  it("rejects an empty file", () => {
    expect(() => parseBenchCsv("")).toThrow(CsvFormatError);
  });

  it("rejects short rows", () => {
    expect(() => parseBenchCsv(`${HEADER}\nfusion,10\n`)).toThrow(CsvFormatError);
  });

  it("rejects non-numeric counters", () => {
    expect(() =>
      parseBenchCsv(`${HEADER}\nfusion,10,uniform,1,8,many,0,0,0,true\n`),
    ).toThrow(CsvFormatError);
  });

  it("rejects unknown verified markers", () => {
    expect(() =>
      parseBenchCsv(`${HEADER}\nfusion,10,uniform,1,8,1,0,0,0,yes\n`),
    ).toThrow(CsvFormatError);
  });
});
