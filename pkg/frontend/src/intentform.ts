// Structured intent input: property, direction keyword, typicality slider,
// optional parent, plus the typical/novel recommendation buttons.

import { el } from "./canvas.js";
import type { PropertySpec, Recommendation } from "./types.js";

export interface IntentSubmission {
  property: string;
  direction: string;
  typicality: number;
  parent: string | null;
}

export interface IntentFormHandlers {
  onSubmit(input: IntentSubmission): Promise<void>;
  onRecommend(property: string, contextBlockId: string): Promise<Recommendation>;
}

export class IntentForm {
  readonly root: HTMLElement;
  private readonly propertySelect: HTMLSelectElement;
  private readonly directionInput: HTMLInputElement;
  private readonly slider: HTMLInputElement;
  private readonly sliderValue: HTMLElement;
  private readonly parentLabel: HTMLElement;
  private readonly clearParent: HTMLButtonElement;
  private readonly errorBox: HTMLElement;
  private readonly spinner: HTMLElement;
  private readonly submitButton: HTMLButtonElement;
  private readonly recommendButton: HTMLButtonElement;
  private readonly recommendBox: HTMLElement;
  private parentId: string | null = null;

  constructor(private readonly handlers: IntentFormHandlers) {
    this.root = el("form", "intent-form");
    (this.root as HTMLFormElement).noValidate = true;

    this.propertySelect = document.createElement("select");
    this.propertySelect.className = "intent-property";
    this.directionInput = document.createElement("input");
    this.directionInput.className = "intent-direction";
    this.directionInput.placeholder = "direction keyword";

    this.slider = document.createElement("input");
    this.slider.type = "range";
    this.slider.min = "1";
    this.slider.max = "5";
    this.slider.step = "1";
    this.slider.value = "3";
    this.slider.className = "intent-typicality";
    this.sliderValue = el("span", "slider-value", "3");
    this.slider.oninput = () => {
      this.sliderValue.textContent = this.slider.value;
    };

    this.parentLabel = el("span", "parent-label", "root");
    this.clearParent = el("button", "clear-parent", "unlink");
    this.clearParent.type = "button";
    this.clearParent.onclick = () => this.setParent(null);

    this.errorBox = el("div", "form-error");
    this.spinner = el("span", "spinner");
    this.spinner.hidden = true;

    this.submitButton = el("button", "intent-submit", "craft block");
    this.submitButton.type = "submit";

    this.recommendButton = el("button", "recommend-btn", "Recommend directions");
    this.recommendButton.type = "button";
    this.recommendButton.onclick = () => void this.requestRecommendations();
    this.recommendBox = el("div", "recommendations");

    const sliderRow = el("div", "form-row slider-row");
    sliderRow.append(
      el("span", "slider-label", "typical"),
      this.slider,
      el("span", "slider-label", "atypical"),
      this.sliderValue,
    );
    const parentRow = el("div", "form-row parent-row");
    parentRow.append(el("span", "", "chained to: "), this.parentLabel, this.clearParent);

    this.root.append(
      this.propertySelect,
      this.directionInput,
      sliderRow,
      parentRow,
      this.recommendButton,
      this.recommendBox,
      this.submitButton,
      this.spinner,
      this.errorBox,
    );

    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
  }

  setProperties(properties: PropertySpec[]): void {
    const current = this.propertySelect.value;
    this.propertySelect.textContent = "";
    for (const property of properties) {
      const option = document.createElement("option");
      option.value = property.name;
      option.textContent = `${property.name} (${property.kind})`;
      this.propertySelect.appendChild(option);
    }
    if (current && properties.some((p) => p.name === current)) {
      this.propertySelect.value = current;
    }
  }

  setParent(blockId: string | null, label?: string): void {
    this.parentId = blockId;
    this.parentLabel.textContent = blockId ? (label ?? blockId) : "root";
    this.recommendButton.disabled = blockId === null;
  }

  get parent(): string | null {
    return this.parentId;
  }

  fillDirection(direction: string): void {
    this.directionInput.value = direction;
  }

  showError(message: string): void {
    this.errorBox.textContent = message;
  }

  private async requestRecommendations(): Promise<void> {
    if (!this.parentId) return;
    this.recommendBox.textContent = "";
    this.showError("");
    try {
      const rec = await this.handlers.onRecommend(this.propertySelect.value, this.parentId);
      for (const [label, value] of [
        ["typical", rec.typical],
        ["novel", rec.unique],
      ] as const) {
        const button = el("button", `rec-option rec-${label}`, `${label}: ${value}`);
        button.type = "button";
        button.onclick = () => this.fillDirection(value);
        this.recommendBox.appendChild(button);
      }
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    }
  }

  private async submit(): Promise<void> {
    const direction = this.directionInput.value.trim();
    this.showError("");
    if (!direction) {
      this.showError("direction must not be empty");
      return;
    }
    this.spinner.hidden = false;
    this.submitButton.disabled = true;
    try {
      await this.handlers.onSubmit({
        property: this.propertySelect.value,
        direction,
        typicality: Number(this.slider.value),
        parent: this.parentId,
      });
      this.directionInput.value = "";
      this.recommendBox.textContent = "";
    } catch (error) {
      this.showError(error instanceof Error ? error.message : String(error));
    } finally {
      this.spinner.hidden = true;
      this.submitButton.disabled = false;
    }
  }
}
