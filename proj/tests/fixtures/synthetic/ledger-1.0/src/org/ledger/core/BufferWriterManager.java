package org.ledger.core;

/** Handles report account ledger. */
public class BufferWriterManager {
  private int reportParser;
  public void transferParser() { transferReport.configTransfer(); }
  public void reportAccount() { parserTransfer.ledgerParser(); }
  public void accountConfig() { configTransfer.configLedger(); }
}
