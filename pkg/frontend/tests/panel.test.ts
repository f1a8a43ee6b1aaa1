import { describe, expect, it } from "vitest";

import {
  ALGORITHMS,
  CRITICAL_MEL_MAX,
  CRITICAL_MEL_MIN,
  DIVISOR_MAX,
  DIVISOR_MIN,
  controlForInput,
  renderPanel,
  type PanelView,
} from "../src/panel.js";
import { makeConfig } from "./helpers.js";

function panelView(overrides: Partial<PanelView> = {}): PanelView {
  return { collapsed: false, config: makeConfig(1), pending: null, lastError: null, ...overrides };
}

describe("controlForInput", () => {
  it("maps panel inputs to wire controls with typed values", () => {
    expect(controlForInput("critical", "250")).toEqual({ type: "control", action: "set_critical_mel", value: 250 });
    expect(controlForInput("divisor", "8")).toEqual({ type: "control", action: "set_difficulty_divisor", value: 8 });
    expect(controlForInput("algorithm", "Mpm")).toEqual({ type: "control", action: "set_algorithm", value: "Mpm" });
    expect(controlForInput("level", "medium")).toEqual({ type: "control", action: "set_level", value: "medium" });
  });
});

describe("renderPanel", () => {
  it("renders slider bounds that match the engine's accepted ranges", () => {
    const html = renderPanel(panelView());
    expect(html).toContain(`min="${CRITICAL_MEL_MIN}" max="${CRITICAL_MEL_MAX}"`);
    expect(html).toContain(`min="${DIVISOR_MIN}" max="${DIVISOR_MAX}"`);
  });

  it("renders every value from the config echo", () => {
    const html = renderPanel(panelView({ config: makeConfig(2, { criticalMel: 400, divisor: 8 }) }));
    expect(html).toContain('data-panel="critical"');
    expect(html).toContain('value="400"');
    expect(html).toContain('data-panel="divisor"');
    expect(html).toContain('value="8"');
    expect(html).toContain("effective critical: 50.0 mel");
  });

  it("keeps showing the echoed value while a control is pending", () => {
    const html = renderPanel(
      panelView({
        config: makeConfig(2, { criticalMel: 400, divisor: 1 }),
        pending: { action: "set_difficulty_divisor", value: 8 },
      }),
    );
    // The slider stays on the engine's answer (1), not the hoped-for 8.
    expect(html).toContain('data-panel="divisor" min="1" max="8" step="1" value="1"');
    expect(html).toContain("sent set_difficulty_divisor, waiting for the engine");
  });

  it("surfaces a rejected control inline, escaped", () => {
    const html = renderPanel(panelView({ lastError: "set_critical_mel: must be > 0 & < ceiling" }));
    expect(html).toContain('class="panel-error"');
    expect(html).toContain("must be &gt; 0 &amp; &lt; ceiling");
  });

  it("offers every detector and marks the echoed one selected", () => {
    const html = renderPanel(panelView({ config: makeConfig(2, { algorithm: "Mpm" }) }));
    for (const name of ALGORITHMS) {
      expect(html).toContain(`<option value="${name}"`);
    }
    expect(html).toContain('<option value="Mpm" selected>');
  });

  it("keeps an unknown level name selectable rather than lying about it", () => {
    const html = renderPanel(panelView({ config: makeConfig(2, { levelName: "clinic-7" }) }));
    expect(html).toContain('<option value="clinic-7" selected>');
    expect(html).toContain('<option value="easiest">');
  });

  it("locks the level picker and offers stop while a session runs", () => {
    const html = renderPanel(panelView({ config: makeConfig(2, { running: true }) }));
    expect(html).toContain('data-panel="level" disabled');
    expect(html).toContain('data-panel="stop"');
    expect(html).not.toContain('data-panel="start"');
  });

  it("offers start when idle", () => {
    const html = renderPanel(panelView({ config: makeConfig(2, { running: false }) }));
    expect(html).toContain('data-panel="start"');
  });

  it("collapses to just the toggle", () => {
    const html = renderPanel(panelView({ collapsed: true }));
    expect(html).toContain("therapist panel");
    expect(html).not.toContain("<input");
    expect(html).not.toContain("<select");
  });

  it("renders a waiting note before the first echo", () => {
    const html = renderPanel(panelView({ config: null }));
    expect(html).toContain("waiting for engine settings");
    expect(html).not.toContain("<input");
  });
});
