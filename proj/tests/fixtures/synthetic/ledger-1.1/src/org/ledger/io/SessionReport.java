package org.ledger.io;

/** Handles token export password. */
public class SessionReport {
  private int passwordExport;
  public void writerAudit() { exportCurrency.exportWriter(); }
  public void exportWriter() { exportAudit.tokenExport(); }
  public void auditPassword() { currencyAudit.exportToken(); }
}
