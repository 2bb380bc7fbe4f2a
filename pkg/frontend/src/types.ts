/** Wire types of the session API. The client never interprets formulas or
 * verdicts; every statement, color, and hint decision arrives in a snapshot. */

export type NodeKind = "premise" | "derived" | "conclusion" | "assertion";
export type NodeColor = "green" | "yellow" | "gray" | "cyan" | null;

export interface WorkspaceNode {
  id: number;
  label: string;
  number: number | null;
  statement: string;
  kind: NodeKind;
  color: NodeColor;
  rule: string | null;
  sources: number[];
}

export interface ProblemInfo {
  id: string;
  section: string;
  rank: number;
  premises: string[];
  conclusion: string;
  rules: string[];
}

export interface PendingHint {
  hint: number;
  kind: "assertion" | "message" | "ondemand";
  statement: string;
  node: number | null;
}

export interface Snapshot {
  session: string;
  student: string;
  condition: string;
  phase: string;
  level: number;
  terminal: boolean;
  problem: ProblemInfo | null;
  workspace: WorkspaceNode[];
  pending_hint: PendingHint | null;
  message_box: string;
  problem_complete: boolean;
  can_advance: boolean;
  can_restart: boolean;
  can_skip: boolean;
  skips_used: number;
  solved_in_level: number;
}

export interface ApiError {
  status: number;
  error: string;
  snapshot?: Snapshot;
}

/** The ten rule buttons of the center panel. */
export const RULES = [
  "MP",
  "MT",
  "HS",
  "DS",
  "Simp",
  "Conj",
  "Add",
  "DN",
  "DeM",
  "Impl",
] as const;
