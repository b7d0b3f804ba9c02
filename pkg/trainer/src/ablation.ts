/**
 * Ablation harness: train one model per task subset with identical seeds
 * and epochs, then report held-out dialogue perplexity per subset.
 */
import { Instance, TaskKind, taskCounts } from './data.js';
import { TrainConfig, evaluate, trainModel } from './train.js';

export const ABLATION_SUBSETS: TaskKind[][] = [
  ['dialogue'],
  ['dialogue', 'graph'],
  ['dialogue', 'ner'],
  ['dialogue', 'graph', 'ner'],
];

export interface AblationRow {
  tasks: string;
  trainInstances: number;
  counts: Record<TaskKind, number>;
  heldOutDialoguePpl: number;
}

export function runAblation(
  trainInstances: readonly Instance[],
  holdoutInstances: readonly Instance[],
  config: Partial<TrainConfig> = {},
): AblationRow[] {
  const holdoutDialogue = holdoutInstances.filter((i) => i.task === 'dialogue');
  const rows: AblationRow[] = [];
  for (const subset of ABLATION_SUBSETS) {
    const { model, run } = trainModel(trainInstances, { ...config, tasks: subset });
    const { ppl } = evaluate(model, holdoutDialogue);
    model.dispose();
    rows.push({
      tasks: subset.join('+'),
      trainInstances: Object.values(run.counts).reduce((a, b) => a + b, 0),
      counts: taskCounts(trainInstances.filter((i) => subset.includes(i.task))),
      heldOutDialoguePpl: ppl,
    });
  }
  return rows;
}
