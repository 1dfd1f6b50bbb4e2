export * from "./api";
export * from "./colors";
export * from "./controller";
export * from "./renderModel";
export * from "./state";
export * from "./types";
