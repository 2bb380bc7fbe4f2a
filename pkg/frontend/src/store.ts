/** Client-side session state: the latest snapshot plus the selection
 * (<= 2 nodes, <= 1 rule, typed statement). Every action maps to exactly one
 * API request; while one is in flight the mutating controls are locked.
 * A 422 keeps the selection so the student can correct just the rule. */

import { ApiClient, isApiError } from "./api";
import type { Snapshot } from "./types";
import { UiState, WorkspaceView, initialUiState, render } from "./view";

export type Listener = (view: WorkspaceView) => void;

export class SessionStore {
  snapshot: Snapshot | null = null;
  ui: UiState = { ...initialUiState };
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
    if (this.snapshot) listener(this.view());
  }

  view(): WorkspaceView {
    if (!this.snapshot) {
      return { ...render({ workspace: [] } as unknown as Snapshot), banner: null };
    }
    return render(this.snapshot, this.ui);
  }

  private publish(): void {
    const view = this.view();
    for (const listener of this.listeners) listener(view);
  }

  private accept(snapshot: Snapshot, clearSelection: boolean): void {
    this.snapshot = snapshot;
    if (clearSelection) {
      this.ui = { ...this.ui, selectedNodes: [], selectedRule: null, derivedText: "" };
    }
    this.ui.note = null;
    this.ui.busy = false;
    this.publish();
  }

  async create(student: string, condition: string, seed: number): Promise<void> {
    this.accept(await this.api.createSession(student, condition, seed), true);
  }

  async resume(sessionId: string): Promise<void> {
    this.accept(await this.api.getSession(sessionId), true);
  }

  // --- selection ------------------------------------------------------------

  toggleNode(id: number): void {
    const selected = this.ui.selectedNodes;
    if (selected.includes(id)) {
      this.ui.selectedNodes = selected.filter((n) => n !== id);
    } else if (selected.length < 2) {
      this.ui.selectedNodes = [...selected, id];
    } else {
      // a third click replaces the oldest selection
      this.ui.selectedNodes = [selected[1]!, id];
    }
    this.ui.note = null;
    this.publish();
  }

  chooseRule(rule: string): void {
    this.ui.selectedRule = this.ui.selectedRule === rule ? null : rule;
    this.ui.note = null;
    this.publish();
  }

  setDerivedText(text: string): void {
    this.ui.derivedText = text;
  }

  // --- actions (one request each) ---------------------------------------------

  private async mutate(
    request: () => Promise<Snapshot>,
    clearSelection: boolean,
  ): Promise<boolean> {
    if (!this.snapshot || this.ui.busy) return false;
    this.ui.busy = true;
    this.publish();
    try {
      this.accept(await request(), clearSelection);
      return true;
    } catch (failure) {
      if (isApiError(failure)) {
        // feedback goes to the message box; the selection stays put
        if (failure.snapshot) this.snapshot = failure.snapshot;
        this.ui.busy = false;
        this.ui.note = failure.error;
        this.publish();
        return false;
      }
      this.ui.busy = false;
      this.ui.note = "The tutor could not be reached.";
      this.publish();
      return false;
    }
  }

  async submit(): Promise<boolean> {
    if (!this.snapshot) return false;
    if (this.ui.selectedNodes.length === 0) {
      this.ui.note = "Select 1-2 source nodes first.";
      this.publish();
      return false;
    }
    if (!this.ui.selectedRule) {
      this.ui.note = "Pick a rule for the step.";
      this.publish();
      return false;
    }
    if (!this.ui.derivedText.trim()) {
      this.ui.note = "Type the derived statement.";
      this.publish();
      return false;
    }
    const id = this.snapshot.session;
    const { selectedNodes, selectedRule, derivedText } = this.ui;
    return this.mutate(
      () => this.api.submitStep(id, selectedNodes, selectedRule, derivedText),
      true,
    );
  }

  async getHint(): Promise<boolean> {
    if (!this.snapshot) return false;
    const id = this.snapshot.session;
    return this.mutate(() => this.api.requestHint(id), false);
  }

  async skip(): Promise<boolean> {
    if (!this.snapshot || !this.snapshot.can_skip) return false;
    const id = this.snapshot.session;
    return this.mutate(() => this.api.skip(id), true);
  }

  async restart(): Promise<boolean> {
    if (!this.snapshot) return false;
    const id = this.snapshot.session;
    return this.mutate(() => this.api.restart(id), true);
  }

  async advance(): Promise<boolean> {
    if (!this.snapshot) return false;
    const id = this.snapshot.session;
    return this.mutate(() => this.api.advance(id), true);
  }

  async deleteAssertion(node: number): Promise<boolean> {
    if (!this.snapshot) return false;
    const id = this.snapshot.session;
    return this.mutate(() => this.api.deleteAssertion(id, node), false);
  }
}
